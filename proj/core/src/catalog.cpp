#include "gs/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "gs/errors.hpp"

namespace gs {

namespace {

double get(const std::map<std::string, double>& m, const std::string& k) {
    const auto it = m.find(k);
    if (it == m.end()) throw std::invalid_argument("missing parameter '" + k + "'");
    return it->second;
}

double get_or(const std::map<std::string, double>& m, const std::string& k, double fallback) {
    const auto it = m.find(k);
    return it == m.end() ? fallback : it->second;
}

bool has(const std::map<std::string, double>& m, const std::string& k) { return m.count(k) != 0; }

// Bisection-based real-root isolation on [-1e6, 1e6]; the constraint
// polynomials are smooth and low-degree, a sign-change scan is enough.
std::vector<double> isolate_roots(const std::function<double(double)>& f) {
    std::vector<double> roots;
    // denser sampling near the origin where the physical roots live
    std::vector<double> grid;
    for (double x = -16.0; x <= 16.0; x += 1.0 / 64) grid.push_back(x);
    for (double m = 16.0; m < 1e6; m *= 1.5) {
        grid.push_back(m * 1.5);
        grid.insert(grid.begin(), -m * 1.5);
    }
    std::sort(grid.begin(), grid.end());
    auto push_root = [&](double x) {
        for (double r : roots)
            if (std::abs(r - x) <= 1e-9 * std::max(1.0, std::abs(x))) return;
        roots.push_back(x);
    };
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double lo = grid[i], hi = grid[i + 1];
        double flo = f(lo), fhi = f(hi);
        if (flo == 0) push_root(lo);
        if (fhi == 0) push_root(hi);
        if (flo * fhi >= 0) continue;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0) { lo = hi = mid; break; }
            if (flo * fm < 0) { hi = mid; fhi = fm; }
            else { lo = mid; flo = fm; }
            if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
        }
        push_root(0.5 * (lo + hi));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// D-shape profile coefficients at q = -1/4:
// a = -(3/4) A^2 (sigma^2 - sigma), b = -A/4.
void dshape_profile(double A, double sigma, double& a, double& b) {
    a = -0.75 * A * A * (sigma * sigma - sigma);
    b = -A / 4.0;
}

Expr abs_power_of_psi(double coef, double p) {
    // coef * |psi|^p written in grammar terms as coef * (psi^2)^(p/2)
    const Expr psi = Expr::variable(ExprVar::Psi);
    return Expr::constant(coef) * Expr::pow(Expr::pow(psi, 2.0), p / 2.0);
}

} // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::CylQuartic: return "cyl_quartic";
        case Family::SqrtR: return "sqrt_r";
        case Family::LogCyl: return "log_cyl";
        case Family::CondParabolic: return "cond_parabolic";
        case Family::CondExp: return "cond_exp";
        case Family::RotPower: return "rot_power";
        case Family::WeakPower: return "weak_power";
        case Family::TrivialWeak: return "trivial_weak";
        case Family::WeakQuad: return "weak_quad";
        case Family::WeakCubic: return "weak_cubic";
        case Family::DShape: return "dshape";
        case Family::DShapeComplement: return "dshape_complement";
        case Family::LinearSeparable: return "linear_separable";
        case Family::LinearParticular: return "linear_particular";
        case Family::Superposition: return "superposition";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    for (Family f : all_families())
        if (to_string(f) == name) return f;
    throw std::invalid_argument("unknown family '" + name + "'");
}

std::vector<Family> all_families() {
    return {Family::CylQuartic, Family::SqrtR, Family::LogCyl, Family::CondParabolic,
            Family::CondExp, Family::RotPower, Family::WeakPower, Family::TrivialWeak,
            Family::WeakQuad, Family::WeakCubic, Family::DShape, Family::DShapeComplement};
}

Jet ClosedFormSolution::eval(double r, double z) const { return evaluator(r, z); }

double ClosedFormSolution::param(const std::string& key) const { return get(params, key); }

std::vector<double> cyl_quartic_amplitudes(double a, double b) {
    return isolate_roots([=](double A) { return 8 * A * A - a - b * A; });
}

std::vector<double> sqrt_r_amplitudes(double a, double b) {
    return isolate_roots([=](double A) {
        const double A4 = A * A * A * A;
        return 3 * A4 * A4 + 4 * a + 4 * b * A4;
    });
}

ClosedFormSolution instantiate(Family family, const std::map<std::string, double>& p) {
    ClosedFormSolution s;
    s.family = family;
    s.params = p;

    switch (family) {
        case Family::CylQuartic: {
            const double a = get(p, "a"), b = get(p, "b");
            double A;
            if (has(p, "A")) {
                A = get(p, "A");
                if (std::abs(8 * A * A - a - b * A) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}))
                    throw numeric_error("cyl_quartic: 8A^2 = a + bA violated for the given A");
            } else {
                const auto roots = cyl_quartic_amplitudes(a, b);
                if (roots.empty()) throw numeric_error("cyl_quartic: 8A^2 = a + bA has no real root");
                A = roots.back(); // prefer the largest (positive when one exists)
                s.params["A"] = A;
            }
            const double A2 = A * A;
            s.F = ProfileSpec::power_shifted(a, 0, 0); // the constant a
            s.G = ProfileSpec::power_shifted(b, 0, 0.5);
            s.domain = [](double r, double) { return r > 0; };
            s.evaluator = [A2](double r, double z) {
                if (r <= 0) throw domain_error("cyl_quartic: r must be positive");
                return A2 * pow(Jet::var_r(r), 4.0) + 0.0 * Jet::var_z(z);
            };
            s.box = {0.2, 1.5, -1.0, 1.0};
            s.form = "psi = A^2 r^4, A = " + fmt(A);
            break;
        }

        case Family::SqrtR: {
            const double a = get(p, "a"), b = get(p, "b");
            double A;
            if (has(p, "A")) {
                A = get(p, "A");
                const double A4 = A * A * A * A;
                if (std::abs(3 * A4 * A4 + 4 * a + 4 * b * A4) >
                    1e-8 * std::max({1.0, std::abs(a), std::abs(b), 3 * A4 * A4}))
                    throw numeric_error("sqrt_r: 3A^8 + 4a + 4bA^4 = 0 violated for the given A");
            } else {
                const auto roots = sqrt_r_amplitudes(a, b);
                if (roots.empty()) throw numeric_error("sqrt_r: 3A^8 + 4a + 4bA^4 = 0 has no real root");
                A = roots.back();
                s.params["A"] = A;
            }
            s.F = ProfileSpec::power_shifted(a, 0, -7);
            s.G = ProfileSpec::power_shifted(b, 0, -3);
            s.domain = [](double r, double) { return r > 0; };
            s.evaluator = [A](double r, double z) {
                if (r <= 0) throw domain_error("sqrt_r: r must be positive");
                return A * sqrt(Jet::var_r(r)) + 0.0 * Jet::var_z(z);
            };
            s.box = {0.3, 3.0, -1.0, 1.0};
            s.form = "psi = A sqrt(r), A = " + fmt(A);
            break;
        }

        case Family::LogCyl: {
            const double a = get(p, "a"), b = get(p, "b");
            if (std::abs(a + b - 4) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
                throw numeric_error("log_cyl: constraint a + b = 4 violated (a + b = " + fmt(a + b) + ")");
            s.F = ProfileSpec::exponential(a, 2);
            s.G = ProfileSpec::exponential(b, 1);
            s.domain = [](double r, double) { return r > 0; };
            s.evaluator = [](double r, double z) {
                if (r <= 0) throw domain_error("log_cyl: r must be positive");
                return -2.0 * log(Jet::var_r(r)) + 0.0 * Jet::var_z(z);
            };
            s.box = {0.4, 2.5, -1.0, 1.0};
            s.form = "psi = -2 log r";
            break;
        }

        case Family::CondParabolic: {
            const double kappa = get(p, "kappa"), c = get_or(p, "c", 0.0);
            s.F = ProfileSpec::power_shifted(-1, 0, -3);
            s.G = ProfileSpec::power_shifted(-kappa * kappa, 0, -3);
            s.domain = [kappa, c](double r, double z) {
                return r > 0 && r * r - 2 * kappa * z + c > 0;
            };
            s.evaluator = [kappa, c](double r, double z) {
                const Jet R = Jet::var_r(r), Z = Jet::var_z(z);
                const Jet inner = R * R - (2 * kappa) * Z + c;
                if (inner.v <= 0) throw domain_error("cond_parabolic: r^2 - 2 kappa z + c must be positive");
                return sqrt(inner);
            };
            s.box = {0.5, 2.5, -2.0, 2.0};
            s.form = "psi = (r^2 - 2 kappa z + c)^(1/2), kappa = " + fmt(kappa) + ", c = " + fmt(c);
            break;
        }

        case Family::CondExp: {
            const double c = get(p, "c"), c0 = get_or(p, "c0", 0.0), kappa = get(p, "kappa");
            if (c == 0) throw std::invalid_argument("cond_exp: c must be nonzero");
            s.F = ProfileSpec::exponential(1, 1);
            s.G = ProfileSpec::exponential(kappa * kappa, 1);
            s.domain = [c, c0, kappa](double r, double z) {
                const double u = c * r * r - 2 * c * kappa * z + c0;
                return r > 0 && std::abs(u) > 1e-8;
            };
            s.evaluator = [c, c0, kappa](double r, double z) {
                const Jet R = Jet::var_r(r), Z = Jet::var_z(z);
                const Jet u = c * (R * R) - (2 * c * kappa) * Z + c0;
                if (std::abs(u.v) <= 1e-12) throw domain_error("cond_exp: argument of cosech vanishes");
                const Jet sh = sinh(u);
                // log(8 c^2 / sinh^2 u), written with sinh^2 to stay real on both branches
                return Jet::constant(std::log(8 * c * c)) - log(sh * sh);
            };
            s.box = {0.3, 2.0, -1.5, 1.5};
            s.form = "psi = log(8 c^2 cosech^2(c r^2 - 2 c kappa z + c0)), c = " + fmt(c) +
                     ", c0 = " + fmt(c0) + ", kappa = " + fmt(kappa);
            break;
        }

        case Family::RotPower: {
            const double b = get(p, "b"), beta = get(p, "beta");
            if (beta == 1 || beta == -1)
                throw std::invalid_argument("rot_power: beta = +-1 is excluded");
            const double gamma = 1.0 / (1.0 - beta);
            const double base = b / (4 * gamma * gamma - 2 * gamma);
            if (base <= 0 && !is_integral_exponent(gamma))
                throw numeric_error("rot_power: A = (b/(4 gamma^2 - 2 gamma))^gamma is not real");
            const double A = std::pow(base, gamma);
            s.params["gamma"] = gamma;
            s.params["A"] = A;
            s.F = ProfileSpec::zero();
            s.G = ProfileSpec::power_shifted(b, 0, beta);
            s.domain = [](double r, double z) { return r > 0 && r * r + z * z > 0; };
            s.evaluator = [A, gamma](double r, double z) {
                if (r <= 0) throw domain_error("rot_power: r must be positive");
                const Jet R = Jet::var_r(r), Z = Jet::var_z(z);
                return A * pow(R * R + Z * Z, gamma);
            };
            s.box = {0.3, 2.0, -1.5, 1.5};
            s.form = "psi = A (r^2+z^2)^gamma, A = " + fmt(A) + ", gamma = " + fmt(gamma);
            break;
        }

        case Family::WeakPower: {
            const double q = get(p, "q"), sigma = get(p, "sigma");
            if (q == 0) throw std::invalid_argument("weak_power: q must be nonzero");
            if (sigma == 0 || sigma == 1)
                throw std::invalid_argument("weak_power: sigma in {0,1} is degenerate");
            double A;
            if (has(p, "A")) {
                A = get(p, "A");
                if (A == 0) throw std::invalid_argument("weak_power: A must be nonzero");
            } else {
                const double a = get(p, "a"), b = get(p, "b");
                if (std::abs(2 * q + 1) < 1e-12) {
                    if (std::abs(b) > 1e-12)
                        throw numeric_error("weak_power: q = -1/2 forces b = 0");
                    const double A2 = a / (4 * (sigma * sigma - sigma) * q * (q + 1));
                    if (A2 <= 0) throw numeric_error("weak_power: no real A for these (a, sigma)");
                    A = std::sqrt(A2);
                } else {
                    A = b / (2 * q * (2 * q + 1));
                    const double a_expect = 4 * A * A * (sigma * sigma - sigma) * q * (q + 1);
                    if (std::abs(a_expect - a) > 1e-9 * std::max(1.0, std::abs(a)))
                        throw numeric_error("weak_power: (a, b) incompatible with sigma, q (expected a = " +
                                            fmt(a_expect) + ")");
                }
                s.params["A"] = A;
            }
            const WeakFamily wf = weak_family(q, A, sigma);
            s.params["a"] = wf.a;
            s.params["b"] = wf.b;
            s.F = wf.F;
            s.G = wf.G;
            s.domain = [A, sigma](double r, double z) {
                return r > 0 && A * (sigma * r * r + z * z) > 0;
            };
            s.evaluator = [A, sigma, q](double r, double z) {
                const Jet R = Jet::var_r(r), Z = Jet::var_z(z);
                const Jet inner = A * (sigma * (R * R) + Z * Z);
                if (inner.v <= 0) throw domain_error("weak_power: A (sigma r^2 + z^2) must be positive");
                return pow(inner, -q);
            };
            if (sigma > 0 && A > 0)
                s.box = {0.3, 2.0, -1.5, 1.5};
            else if (sigma < 0 && A > 0)
                s.box = {0.1, 1.5, -2.0, 2.0}; // needs z^2 > |sigma| r^2
            else if (sigma < 0 && A < 0)
                s.box = {0.3, 2.5, -1.5, 1.5}; // needs |sigma| r^2 > z^2
            else
                throw numeric_error("weak_power: empty domain (sigma > 0 with A < 0)");
            s.form = "psi = (A (sigma r^2 + z^2))^(-q), A = " + fmt(A) + ", sigma = " + fmt(sigma) +
                     ", q = " + fmt(q);
            break;
        }

        case Family::TrivialWeak: {
            const double sigma = get_or(p, "sigma", -1.0);
            s.params["sigma"] = sigma;
            s.F = ProfileSpec::zero();
            s.G = ProfileSpec::affine(2, 0);
            s.domain = [](double r, double) { return r > 0; };
            s.evaluator = [sigma](double r, double z) {
                const Jet R = Jet::var_r(r), Z = Jet::var_z(z);
                return sigma * (R * R) + Z * Z;
            };
            s.box = {0.3, 2.0, -1.5, 1.5};
            s.form = "psi = sigma r^2 + z^2, sigma = " + fmt(sigma);
            break;
        }

        case Family::WeakQuad:
        case Family::WeakCubic: {
            const double sign = get_or(p, "sign", 1.0);
            const double alpha = get(p, "alpha");
            const double sigma = get_or(p, "sigma", 2.0);
            if (sign != 1.0 && sign != -1.0) throw std::invalid_argument("sign must be +1 or -1");
            if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
            if (sigma != 2.0 && sigma != -1.0)
                throw std::invalid_argument("sigma must be 2 or -1 (sigma^2 - sigma = 2)");
            s.params["sign"] = sign;
            s.params["sigma"] = sigma;
            if (family == Family::WeakQuad) {
                const double k = sign * alpha * alpha / 16.0;
                s.F = ProfileSpec::affine(sign * alpha * alpha, 0);
                s.G = ProfileSpec::opaque(abs_power_of_psi(sign * 3 * alpha, 0.5));
                s.evaluator = [k, sigma](double r, double z) {
                    if (r <= 0) throw domain_error("weak_quad: r must be positive");
                    const Jet R = Jet::var_r(r), Z = Jet::var_z(z);
                    const Jet sj = sigma * (R * R) + Z * Z;
                    if (sj.v < 0) throw domain_error("weak_quad: sigma r^2 + z^2 must be nonnegative");
                    return k * sj * sj;
                };
                s.form = "psi = sign (alpha^2/16) (sigma r^2 + z^2)^2";
            } else {
                const double k = sign * alpha * alpha * alpha / (192.0 * std::sqrt(3.0));
                s.F = ProfileSpec::opaque(abs_power_of_psi(sign * alpha * alpha, 1.0 / 3.0));
                s.G = ProfileSpec::opaque(abs_power_of_psi(sign * 15 * alpha / (2 * std::sqrt(3.0)), 2.0 / 3.0));
                s.evaluator = [k, sigma](double r, double z) {
                    if (r <= 0) throw domain_error("weak_cubic: r must be positive");
                    const Jet R = Jet::var_r(r), Z = Jet::var_z(z);
                    const Jet sj = sigma * (R * R) + Z * Z;
                    if (sj.v < 0) throw domain_error("weak_cubic: sigma r^2 + z^2 must be nonnegative");
                    return k * sj * sj * sj;
                };
                s.form = "psi = sign (alpha^3/(192 sqrt 3)) (sigma r^2 + z^2)^3";
            }
            s.G.role = ProfileRole::G;
            s.domain = [sigma](double r, double z) {
                return r > 0 && sigma * r * r + z * z > 0;
            };
            s.box = (sigma > 0) ? SampleBox{0.3, 2.0, -1.5, 1.5} : SampleBox{0.1, 1.2, -2.0, 2.0};
            break;
        }

        case Family::DShape:
        case Family::DShapeComplement: {
            const bool complement = (family == Family::DShapeComplement);
            const double lambda = get(p, "lambda");
            if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
            double A, sigma;
            if (has(p, "A") || has(p, "sigma")) {
                A = get(p, "A");
                sigma = get(p, "sigma");
            } else {
                const DShapeParams dp = dshape_params_from(get(p, "a"), get(p, "b"));
                A = dp.A;
                sigma = dp.sigma;
                s.params["A"] = A;
                s.params["sigma"] = sigma;
            }
            if (sigma >= 0) throw std::invalid_argument(to_string(family) + ": sigma must be negative");
            if (!complement && A >= 0) throw std::invalid_argument("dshape: A must be negative");
            if (complement && A <= 0) throw std::invalid_argument("dshape_complement: A must be positive");
            double a, b;
            dshape_profile(A, sigma, a, b);
            s.params["a"] = a;
            s.params["b"] = b;
            s.F = ProfileSpec::power_shifted(a, 0, -7);
            s.G = ProfileSpec::power_shifted(b, 0, -3);
            s.G.role = ProfileRole::G;
            const bool shift = get_or(p, "shift_z0", 0.0) != 0.0;
            const double zoff = shift ? -1.0 / (2 * lambda) : 0.0; // evaluate at z + zoff
            const double absA = std::abs(A), absS = std::abs(sigma);
            auto inner_value = [lambda, absA, absS, complement, zoff](double r, double z) {
                const double zz = z + zoff;
                const double t = zz + lambda * (r * r + zz * zz);
                const double v = absS * r * r - t * t;
                return complement ? -absA * v : absA * v;
            };
            s.domain = [inner_value](double r, double z) { return r > 0 && inner_value(r, z) > 0; };
            s.evaluator = [lambda, absA, absS, complement, zoff](double r, double z) {
                if (r <= 0) throw domain_error("d-shape: r must be positive");
                const Jet R = Jet::var_r(r);
                const Jet Z = Jet::var_z(z) + zoff;
                const Jet t = Z + lambda * (R * R + Z * Z);
                Jet inner = absS * (R * R) - t * t;
                if (complement) inner = -inner;
                inner = absA * inner;
                if (inner.v < 0) throw domain_error("d-shape: evaluation outside the validity region");
                return pow(inner, 0.25);
            };
            const double r0 = std::sqrt(absS) / (2 * lambda);
            const double radius = std::sqrt(1 + absS) / (2 * lambda);
            const double zc = shift ? 0.0 : -1.0 / (2 * lambda);
            if (!complement) {
                s.box = {std::max(1e-3, r0 - radius), r0 + radius, zc - radius, zc + radius};
            } else {
                s.box = {1e-2, r0 + 2 * radius, zc - 2 * radius, zc + 2 * radius};
            }
            s.form = std::string("psi = [") + (complement ? "|A|((z + lambda(r^2+z^2))^2 - |sigma| r^2)"
                                                          : "|A|(|sigma| r^2 - (z + lambda(r^2+z^2))^2)") +
                     "]^(1/4), lambda = " + fmt(lambda) + ", A = " + fmt(A) + ", sigma = " + fmt(sigma);
            break;
        }

        default:
            throw std::invalid_argument("instantiate: " + to_string(family) +
                                        " is constructed by the linear-case module");
    }
    return s;
}

ClosedFormSolution doubling_partner(const ClosedFormSolution& s) {
    switch (s.family) {
        case Family::WeakPower:
        case Family::TrivialWeak:
        case Family::WeakQuad:
        case Family::WeakCubic: {
            auto params = s.params;
            const double sigma = get(params, "sigma");
            params["sigma"] = 1 - sigma;
            ClosedFormSolution partner = instantiate(s.family, params);
            partner.derivation = "sigma -> 1 - sigma partner of " + to_string(s.family);
            return partner;
        }
        default:
            throw class_mismatch("doubling_partner: " + to_string(s.family) +
                                 " is not a sigma-parameterized weak family");
    }
}

std::pair<Circle, Circle> dshape_boundary(const ClosedFormSolution& s) {
    if (s.family != Family::DShape && s.family != Family::DShapeComplement)
        throw class_mismatch("dshape_boundary: solution is not in the D-shaped family");
    const double lambda = s.param("lambda");
    const double sigma = s.param("sigma");
    if (lambda <= 0) throw std::invalid_argument("dshape_boundary: lambda must be positive");
    const double r0 = std::sqrt(std::abs(sigma)) / (2 * lambda);
    const double zc = (s.params.count("shift_z0") && s.params.at("shift_z0") != 0.0)
                          ? 0.0
                          : -1.0 / (2 * lambda);
    const double radius = std::sqrt(1 + std::abs(sigma)) / (2 * lambda);
    return {Circle{r0, zc, radius}, Circle{-r0, zc, radius}};
}

} // namespace gs
