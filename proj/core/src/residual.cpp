#include "gs/residual.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "gs/errors.hpp"

namespace gs {

namespace {

// shifts c of negative-power profile forms; |psi + c| < floor is excluded
void negative_power_shifts(const ProfileSpec& s, std::vector<double>& shifts) {
    if (const auto* p = s.as_power(); p && p->p < 0) shifts.push_back(p->c);
}

struct PointEval {
    double lhs, rhs, f_term, g_term;
};

void accumulate(ResidualReport& rep, const PointEval& pe) {
    const double res = std::abs(pe.lhs - pe.rhs);
    const double local_scale = std::max({std::abs(pe.lhs), std::abs(pe.f_term), std::abs(pe.g_term), 1.0});
    rep.max_abs = std::max(rep.max_abs, res);
    rep.rms += res * res;
    rep.scale = std::max(rep.scale, local_scale);
    rep.max_rel = std::max(rep.max_rel, res / local_scale);
    ++rep.n_points;
}

void finalize(ResidualReport& rep) {
    if (rep.n_points > 0) rep.rms = std::sqrt(rep.rms / rep.n_points);
    if (rep.max_abs < rep.rms) rep.rms = rep.max_abs; // guards rounding at ~0
}

} // namespace

double gs_lhs(const Jet& j, double r) {
    if (r <= 0) throw domain_error("gs_lhs: the operator is evaluated at r > 0 only (axis error)");
    return j.drr - j.dr / r + j.dzz;
}

ResidualReport residual(const ClosedFormSolution& s, const SampleSpec& spec) {
    ResidualReport rep;
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> ur(s.box.r0, s.box.r1);
    std::uniform_real_distribution<double> uz(s.box.z0, s.box.z1);

    std::vector<double> shifts;
    negative_power_shifts(s.F, shifts);
    negative_power_shifts(s.G, shifts);

    const long max_attempts = 5000L * std::max(spec.n, 1);
    long attempts = 0;
    while (rep.n_points < spec.n && attempts < max_attempts) {
        ++attempts;
        const double r = ur(rng), z = uz(rng);
        if (r <= 0 || !s.in_domain(r, z)) continue;
        try {
            const Jet j = s.eval(r, z);
            bool low = false;
            for (double c : shifts)
                if (std::abs(j.v + c) < spec.psi_floor) low = true;
            if (low) {
                ++rep.excluded_low_psi;
                continue;
            }
            const double F = s.F(j.v), G = s.G(j.v);
            accumulate(rep, {gs_lhs(j, r), r * r * F + G, r * r * F, G});
        } catch (const domain_error&) {
            rep.failures.push_back({r, z});
        }
    }
    if (rep.n_points == 0)
        throw numeric_error("residual: no sampled point fell inside the solution domain");
    finalize(rep);
    return rep;
}

ResidualReport residual_at(const ClosedFormSolution& s, const std::vector<std::array<double, 2>>& pts,
                           double psi_floor) {
    ResidualReport rep;
    std::vector<double> shifts;
    negative_power_shifts(s.F, shifts);
    negative_power_shifts(s.G, shifts);
    for (const auto& p : pts) {
        if (!s.in_domain(p[0], p[1])) {
            rep.failures.push_back(p);
            continue;
        }
        try {
            const Jet j = s.eval(p[0], p[1]);
            bool low = false;
            for (double c : shifts)
                if (std::abs(j.v + c) < psi_floor) low = true;
            if (low) {
                ++rep.excluded_low_psi;
                continue;
            }
            const double F = s.F(j.v), G = s.G(j.v);
            accumulate(rep, {gs_lhs(j, p[0]), p[0] * p[0] * F + G, p[0] * p[0] * F, G});
        } catch (const domain_error&) {
            rep.failures.push_back(p);
        }
    }
    if (rep.n_points == 0) throw numeric_error("residual_at: every point was outside the domain");
    finalize(rep);
    return rep;
}

ResidualReport grid_residual(const GridField& f, const ProfileSpec& F, const ProfileSpec& G) {
    const GridSpec& g = f.spec;
    if (g.nr < 5 || g.nz < 5) throw std::invalid_argument("grid_residual: grid must be at least 5x5");
    ResidualReport rep;
    const double hr = g.hr(), hz = g.hz();
    for (int j = 1; j < g.nz - 1; ++j) {
        for (int i = 1; i < g.nr - 1; ++i) {
            if (!(f.is_valid(i, j) && f.is_valid(i - 1, j) && f.is_valid(i + 1, j) && f.is_valid(i, j - 1) &&
                  f.is_valid(i, j + 1)))
                continue;
            const double r = g.r_at(i);
            if (r <= 0) continue;
            const double c = f.at(i, j);
            const double prr = (f.at(i + 1, j) - 2 * c + f.at(i - 1, j)) / (hr * hr);
            const double pr = (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * hr);
            const double pzz = (f.at(i, j + 1) - 2 * c + f.at(i, j - 1)) / (hz * hz);
            double Fv, Gv;
            try {
                Fv = F(c);
                Gv = G(c);
            } catch (const domain_error&) {
                rep.failures.push_back({r, g.z_at(j)});
                continue;
            }
            accumulate(rep, {prr - pr / r + pzz, r * r * Fv + Gv, r * r * Fv, Gv});
        }
    }
    if (rep.n_points == 0) throw numeric_error("grid_residual: no valid interior stencil");
    finalize(rep);
    return rep;
}

namespace {

// FD residual at one interior grid point; false when the stencil touches an
// invalid node or a profile domain error
bool point_residual(const GridField& f, const ProfileSpec& F, const ProfileSpec& G, int i, int j,
                    double& out) {
    const GridSpec& g = f.spec;
    if (i < 1 || j < 1 || i + 1 >= g.nr || j + 1 >= g.nz) return false;
    if (!(f.is_valid(i, j) && f.is_valid(i - 1, j) && f.is_valid(i + 1, j) && f.is_valid(i, j - 1) &&
          f.is_valid(i, j + 1)))
        return false;
    const double r = g.r_at(i);
    if (r <= 0) return false;
    const double c = f.at(i, j);
    const double prr = (f.at(i + 1, j) - 2 * c + f.at(i - 1, j)) / (g.hr() * g.hr());
    const double pr = (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * g.hr());
    const double pzz = (f.at(i, j + 1) - 2 * c + f.at(i, j - 1)) / (g.hz() * g.hz());
    try {
        out = prr - pr / r + pzz - (r * r * F(c) + G(c));
    } catch (const domain_error&) {
        return false;
    }
    return true;
}

} // namespace

double grid_convergence_order(const GridField& coarse, const GridField& fine, const ProfileSpec& F,
                              const ProfileSpec& G) {
    const double ratio_h = coarse.spec.hr() / fine.spec.hr();
    if (ratio_h <= 1) throw numeric_error("grid_convergence_order: grids are not a refinement pair");

    // nested refinement: measure both residuals over the matched interior
    // points, so the two samples cover the same region
    const bool nested = fine.spec.nr == 2 * (coarse.spec.nr - 1) + 1 &&
                        fine.spec.nz == 2 * (coarse.spec.nz - 1) + 1 &&
                        coarse.spec.r0 == fine.spec.r0 && coarse.spec.r1 == fine.spec.r1 &&
                        coarse.spec.z0 == fine.spec.z0 && coarse.spec.z1 == fine.spec.z1;
    if (nested) {
        double sc = 0, sf = 0;
        long n = 0;
        for (int j = 1; j + 1 < coarse.spec.nz; ++j) {
            for (int i = 1; i + 1 < coarse.spec.nr; ++i) {
                double rc, rf;
                if (!point_residual(coarse, F, G, i, j, rc)) continue;
                if (!point_residual(fine, F, G, 2 * i, 2 * j, rf)) continue;
                sc += rc * rc;
                sf += rf * rf;
                ++n;
            }
        }
        if (n == 0 || sc <= 0 || sf <= 0)
            throw numeric_error("grid_convergence_order: no common valid stencil");
        return 0.5 * std::log(sc / sf) / std::log(2.0);
    }

    const ResidualReport rc = grid_residual(coarse, F, G);
    const ResidualReport rf = grid_residual(fine, F, G);
    if (rc.rms <= 0 || rf.rms <= 0)
        throw numeric_error("grid_convergence_order: degenerate residual pair");
    return std::log(rc.rms / rf.rms) / std::log(ratio_h);
}

std::string ResidualReport::to_json() const {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "{\"n_points\": %d, \"max_abs\": %.17g, \"rms\": %.17g, \"scale\": %.17g, "
                  "\"max_rel\": %.17g, \"relative\": %.17g, \"excluded_low_psi\": %d, \"n_failures\": %zu}",
                  n_points, max_abs, rms, scale, max_rel, relative(), excluded_low_psi, failures.size());
    return buf;
}

} // namespace gs
