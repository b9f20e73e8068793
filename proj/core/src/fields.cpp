#include "gs/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gs/errors.hpp"

namespace gs {

namespace {
constexpr double kPi = std::numbers::pi;
}

FieldTriple b_field(const ClosedFormSolution& s, const CurrentProfile& I, double r, double z) {
    if (r < 0) throw domain_error("b_field: r must be nonnegative");
    const Jet j = s.eval(r, z);
    if (r == 0) {
        if (std::abs(j.dr) > 1e-14 || std::abs(j.dz) > 1e-14)
            throw domain_error("b_field: axis error, psi_r and psi_z do not vanish at r = 0");
        const double Iv = I(j.v);
        if (std::abs(Iv) > 1e-14)
            throw domain_error("b_field: axis error, I(psi) does not vanish at r = 0");
        return {0.0, 0.0, j.drr}; // limit of psi_r / r
    }
    return {-j.dz / r, I(j.v) / r, j.dr / r};
}

double PIProfiles::pressure(double psi) const {
    if (psi == 0) throw domain_error("pressure profile diverges at psi = 0");
    return p0 + a / (24 * kPi) * std::pow(psi, -6.0);
}

double PIProfiles::dp_dpsi(double psi) const {
    return -a / (4 * kPi) * std::pow(psi, -7.0);
}

double PIProfiles::current_squared(double psi) const {
    if (psi == 0) throw domain_error("current profile diverges at psi = 0");
    return I0 * I0 + b / (psi * psi);
}

double PIProfiles::current(double psi) const {
    const double i2 = current_squared(psi);
    if (i2 < 0) throw domain_error("I(psi)^2 < 0: no real azimuthal field function here");
    return std::sqrt(i2);
}

double PIProfiles::boundary_p0(double a, double psi0) {
    return -a / (24 * kPi) * std::pow(psi0, -6.0);
}

PIProfiles p_and_i_maps(double a, double b, double p0, double I0) { return {a, b, p0, I0}; }

AxisResult find_magnetic_axis(const ClosedFormSolution& s) {
    const SampleBox& b = s.box;
    double best_r = 0, best_z = 0, best = -1e300;
    const int n = 101;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double r = b.r0 + (b.r1 - b.r0) * i / (n - 1);
            const double z = b.z0 + (b.z1 - b.z0) * j / (n - 1);
            if (r <= 0 || !s.in_domain(r, z)) continue;
            const double v = s.value(r, z);
            if (v > best) {
                best = v;
                best_r = r;
                best_z = z;
            }
        }
    }
    if (best == -1e300) throw numeric_error("find_magnetic_axis: the sample box misses the domain");

    // damped Newton on the gradient, using the exact Hessian
    double r = best_r, z = best_z, val = best;
    for (int it = 0; it < 60; ++it) {
        const Jet j = s.eval(r, z);
        const double det = j.drr * j.dzz - j.drz * j.drz;
        if (std::abs(det) < 1e-300) break;
        double dr = -(j.dzz * j.dr - j.drz * j.dz) / det;
        double dz = -(-j.drz * j.dr + j.drr * j.dz) / det;
        double step = 1.0;
        bool moved = false;
        for (int k = 0; k < 30; ++k, step *= 0.5) {
            const double rn = r + step * dr, zn = z + step * dz;
            if (rn <= 0 || !s.in_domain(rn, zn)) continue;
            const double vn = s.value(rn, zn);
            if (vn >= val) {
                r = rn;
                z = zn;
                val = vn;
                moved = true;
                break;
            }
        }
        if (!moved || std::hypot(j.dr, j.dz) < 1e-13) break;
    }
    return {r, z, val};
}

// ---------------------------------------------------------------------------
// Toroidal flux by per-cell polygon clipping
// ---------------------------------------------------------------------------

double toroidal_flux(const ClosedFormSolution& s, const CurrentProfile& I, double level,
                     const GridSpec& grid) {
    // field values once per node; invalid nodes poison their cells
    GridField f(grid);
    for (int j = 0; j < grid.nz; ++j)
        for (int i = 0; i < grid.nr; ++i) {
            const double r = grid.r_at(i), z = grid.z_at(j);
            if (r > 0 && s.in_domain(r, z)) f.set(i, j, s.value(r, z));
        }

    double flux = 0;
    std::array<std::array<double, 2>, 8> poly;
    for (int j = 0; j + 1 < grid.nz; ++j) {
        for (int i = 0; i + 1 < grid.nr; ++i) {
            if (!(f.is_valid(i, j) && f.is_valid(i + 1, j) && f.is_valid(i, j + 1) &&
                  f.is_valid(i + 1, j + 1)))
                continue;
            const std::array<std::array<double, 2>, 4> corner = {{{grid.r_at(i), grid.z_at(j)},
                                                                  {grid.r_at(i + 1), grid.z_at(j)},
                                                                  {grid.r_at(i + 1), grid.z_at(j + 1)},
                                                                  {grid.r_at(i), grid.z_at(j + 1)}}};
            const std::array<double, 4> v = {f.at(i, j), f.at(i + 1, j), f.at(i + 1, j + 1),
                                             f.at(i, j + 1)};
            int npoly = 0;
            bool any_above = false, all_above = true;
            for (int k = 0; k < 4; ++k) {
                const bool a0 = v[k] >= level, a1 = v[(k + 1) % 4] >= level;
                any_above |= a0;
                all_above &= a0;
                if (a0) poly[npoly++] = corner[k];
                if (a0 != a1) {
                    const double t = (level - v[k]) / (v[(k + 1) % 4] - v[k]);
                    poly[npoly++] = {corner[k][0] + t * (corner[(k + 1) % 4][0] - corner[k][0]),
                                     corner[k][1] + t * (corner[(k + 1) % 4][1] - corner[k][1])};
                }
            }
            if (!any_above || npoly < 3) continue;
            double area = 0, cr = 0, cz = 0;
            for (int k = 0; k < npoly; ++k) {
                const auto& p0 = poly[k];
                const auto& p1 = poly[(k + 1) % npoly];
                const double w = p0[0] * p1[1] - p1[0] * p0[1];
                area += w;
                cr += (p0[0] + p1[0]) * w;
                cz += (p0[1] + p1[1]) * w;
            }
            area *= 0.5;
            if (std::abs(area) < 1e-300) continue;
            cr /= 6 * area;
            cz /= 6 * area;
            (void)all_above;
            double integrand;
            if (cr > 0 && s.in_domain(cr, cz)) {
                integrand = I(s.value(cr, cz)) / cr;
            } else {
                integrand = I(level) / std::max(cr, grid.hr());
            }
            flux += std::abs(area) * integrand;
        }
    }
    return flux;
}

// ---------------------------------------------------------------------------
// Safety factor
// ---------------------------------------------------------------------------

namespace {

double line_integral_q(const ClosedFormSolution& s, const CurrentProfile& I, double level,
                       const Polyline& pl) {
    const double Iv = I(level);
    double acc = 0;
    const std::size_t n = pl.points.size();
    auto integrand = [&](const std::array<double, 2>& p) {
        const Jet j = s.eval(p[0], p[1]);
        const double g = std::hypot(j.dr, j.dz);
        if (g < 1e-12)
            throw numeric_error("safety_factor: stagnation point on the contour at level " +
                                std::to_string(level));
        return 1.0 / (p[0] * g);
    };
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = integrand(pl.points[i]);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p0 = pl.points[i];
        const auto& p1 = pl.points[(i + 1) % n];
        const double dl = std::hypot(p1[0] - p0[0], p1[1] - p0[1]);
        acc += 0.5 * dl * (vals[i] + vals[(i + 1) % n]);
    }
    return Iv * acc / (2 * kPi);
}

} // namespace

GridField sample_for_contours(const ClosedFormSolution& s, const GridSpec& g, double fill) {
    GridField f(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double r = g.r_at(i), z = g.z_at(j);
            if (r > 0 && s.in_domain(r, z))
                f.set(i, j, s.value(r, z));
            else
                f.set(i, j, fill);
        }
    return f;
}

void project_onto_level(const ClosedFormSolution& s, double level, Polyline& pl) {
    for (auto& p : pl.points) {
        for (int it = 0; it < 4; ++it) {
            if (p[0] <= 0 || !s.in_domain(p[0], p[1])) break;
            const Jet j = s.eval(p[0], p[1]);
            const double g2 = j.dr * j.dr + j.dz * j.dz;
            if (g2 < 1e-30) break;
            const double step = (level - j.v) / g2;
            const double rn = p[0] + step * j.dr, zn = p[1] + step * j.dz;
            if (rn <= 0 || !s.in_domain(rn, zn)) break;
            p = {rn, zn};
        }
    }
}

std::vector<SafetyFactorRow> safety_factor(const ClosedFormSolution& s, const CurrentProfile& I,
                                           const std::vector<double>& levels,
                                           const SafetyFactorOptions& opts) {
    if (levels.empty()) return {};
    const AxisResult axis = find_magnetic_axis(s);

    std::vector<SafetyFactorRow> rows(levels.size());
    std::vector<double> prev_q(levels.size(), 0.0);

    double level_min = levels[0];
    for (double l : levels) level_min = std::min(level_min, l);
    const double fill = level_min - 1e6;

    int n = opts.initial_grid;
    for (;;) {
        const GridSpec g{s.box.r0, s.box.r1, s.box.z0, s.box.z1, n, n};
        const GridField f = sample_for_contours(s, g, fill);
        bool settled = true;
        bool all_closed = true;
        std::string open_level;
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const double level = levels[k];
            ContourSet cs = trace_contour(f, level);
            if (cs.empty())
                throw numeric_error("safety_factor: level " + std::to_string(level) +
                                    " is outside the field range");
            const Polyline* hit = nullptr;
            for (auto& pl : cs.lines) {
                if (pl.closed && pl.contains(axis.r, axis.z)) {
                    hit = &pl;
                    break;
                }
            }
            if (!hit) {
                all_closed = false;
                open_level = std::to_string(level);
                break;
            }
            Polyline refined = *hit;
            project_onto_level(s, level, refined);
            const double q = line_integral_q(s, I, level, refined);
            rows[k].psi = level;
            rows[k].q_line = q;
            if (prev_q[k] != 0.0 &&
                std::abs(q - prev_q[k]) > opts.refine_rel * std::max(std::abs(q), 1e-12))
                settled = false;
            prev_q[k] = q;
        }
        if (!all_closed) {
            if (n >= opts.max_grid)
                throw numeric_error("safety_factor: contour at level " + open_level +
                                    " did not close inside the domain");
            n = 2 * (n - 1) + 1;
            continue;
        }
        if (settled || n >= opts.max_grid) break;
        n = 2 * (n - 1) + 1;
    }

    // flux-derivative cross-check, one centered stencil per level
    double span = 0;
    for (double l : levels) span = std::max(span, std::abs(axis.psi - l));
    const double delta = std::max(1e-6, opts.flux_delta_frac * span);
    const GridSpec quad{s.box.r0, s.box.r1, s.box.z0, s.box.z1, 513, 513};
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const double l = levels[k];
        const double up = toroidal_flux(s, I, l + delta, quad);
        const double dn = toroidal_flux(s, I, l - delta, quad);
        rows[k].q_flux = std::abs(up - dn) / (2 * delta) / (2 * kPi);
    }
    return rows;
}

} // namespace gs
