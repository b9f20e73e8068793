#include "gs/linear.hpp"

#include <cmath>
#include <cstdio>

#include "gs/errors.hpp"
#include "gs/special_functions.hpp"

namespace gs {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

constexpr double kSeriesEps = 1e-4;

} // namespace

double radial_series_beta(double mu) { return -mu / 8.0; }

double RadialClosedForm::value(double r) const {
    if (kind == Kind::BesselJ1Y1) {
        const double k = std::sqrt(mu);
        return r * (c1 * bessel_j1(k * r) + c2 * bessel_y1(k * r));
    }
    const double t = 0.5 * alpha * r * r;
    return c1 * std::sin(t) + c2 * std::cos(t);
}

double RadialClosedForm::deriv(double r) const {
    if (kind == Kind::BesselJ1Y1) {
        const double k = std::sqrt(mu);
        return c1 * (bessel_j1(k * r) + k * r * bessel_j1_prime(k * r)) +
               c2 * (bessel_y1(k * r) + k * r * bessel_y1_prime(k * r));
    }
    const double t = 0.5 * alpha * r * r;
    return alpha * r * (c1 * std::cos(t) - c2 * std::sin(t));
}

double RadialClosedForm::second(double r) const {
    if (kind == Kind::BesselJ1Y1) {
        const double k = std::sqrt(mu);
        return c1 * (2 * k * bessel_j1_prime(k * r) + k * k * r * bessel_j1_second(k * r)) +
               c2 * (2 * k * bessel_y1_prime(k * r) + k * k * r * bessel_y1_second(k * r));
    }
    const double t = 0.5 * alpha * r * r;
    const double s = std::sin(t), c = std::cos(t);
    return alpha * (c1 * c - c2 * s) - alpha * alpha * r * r * (c1 * s + c2 * c);
}

double RadialSolution::value(double r) const {
    if (closed) return closed->value(r);
    return table.interp_w(r);
}

double RadialSolution::deriv(double r) const {
    if (closed) return closed->deriv(r);
    return table.interp_wp(r);
}

RadialSolution radial_solve(double a1, double mu, double r_max, double tol) {
    if (r_max <= 0 || r_max > 50) throw std::invalid_argument("radial_solve: r_max must be in (0, 50]");
    if (tol < 1e-12 || tol > 1e-4) throw std::invalid_argument("radial_solve: tol must be in [1e-12, 1e-4]");

    RadialSolution sol;
    sol.a1 = a1;
    sol.mu = mu;

    const double eps = kSeriesEps;
    const double b2 = radial_series_beta(mu);
    const double b4 = (a1 + mu * mu / 8.0) / 24.0;
    const double w0 = eps * eps * (1 + b2 * eps * eps + b4 * eps * eps * eps * eps);
    const double wp0 = 2 * eps + 4 * b2 * eps * eps * eps + 6 * b4 * std::pow(eps, 5.0);

    OdeOptions opts;
    opts.tol = tol;
    opts.max_step = r_max / 2000.0; // dense knots keep the Hermite interpolant tight
    sol.table = integrate_second_order(
        [a1, mu](double r, double R, double Rp) { return Rp / r - mu * R + a1 * r * r * R; }, eps, w0,
        wp0, r_max, opts);

    if (a1 == 0 && mu > 0) {
        // R = r J1(sqrt(mu) r) has axis behavior sqrt(mu) r^2 / 2
        RadialClosedForm cf;
        cf.kind = RadialClosedForm::Kind::BesselJ1Y1;
        cf.mu = mu;
        cf.c1 = 2.0 / std::sqrt(mu);
        cf.c2 = 0;
        sol.closed = cf;
    } else if (mu == 0 && a1 < 0) {
        RadialClosedForm cf;
        cf.kind = RadialClosedForm::Kind::SinCos;
        cf.alpha = std::sqrt(-a1);
        cf.c1 = 2.0 / cf.alpha; // sin(alpha r^2/2) ~ alpha r^2/2
        cf.c2 = 0;
        sol.closed = cf;
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Separable solutions
// ---------------------------------------------------------------------------

double SeparableSolution::z_factor(double z) const {
    switch (zkind) {
        case ZKind::Osc: return c3 * std::sin(nu * z) + c4 * std::cos(nu * z);
        case ZKind::Hyp: return c3 * std::sinh(nu * z) + c4 * std::cosh(nu * z);
        case ZKind::Linear: return c3 + c4 * z;
    }
    return 0;
}

double SeparableSolution::z_factor_second(double z) const { return h * z_factor(z); }

double SeparableSolution::value(double r, double z) const {
    return c1 * radial.value(r) * z_factor(z);
}

GridField SeparableSolution::sample(const GridSpec& grid) const {
    GridField out(grid);
    const double lo = radial.table.y_min(), hi = radial.table.y_max();
    for (int j = 0; j < grid.nz; ++j) {
        for (int i = 0; i < grid.nr; ++i) {
            const double r = grid.r_at(i);
            if (r <= 0) continue;
            if (!radial.closed && (r < lo || r > hi)) continue;
            out.set(i, j, value(r, grid.z_at(j)));
        }
    }
    return out;
}

std::optional<ClosedFormSolution> SeparableSolution::closed_solution() const {
    if (!radial.closed) return std::nullopt;
    ClosedFormSolution s;
    s.family = Family::LinearSeparable;
    s.params = {{"a1", a1}, {"b1", b1}, {"h", h}, {"mu", mu}, {"c1", c1}, {"c3", c3}, {"c4", c4}};
    s.F = ProfileSpec::affine(0, a1);
    s.G = ProfileSpec::affine(0, b1);
    s.G.role = ProfileRole::G;
    s.domain = [](double r, double) { return r > 0; };
    const RadialClosedForm cf = *radial.closed;
    const double scale = c1;
    const auto self = *this;
    s.evaluator = [cf, scale, self](double r, double z) {
        if (r <= 0) throw domain_error("separable: r must be positive");
        const Jet R(scale * cf.value(r), scale * cf.deriv(r), 0, scale * cf.second(r), 0, 0);
        double Zv, Zp, Zpp;
        switch (self.zkind) {
            case ZKind::Osc:
                Zv = self.c3 * std::sin(self.nu * z) + self.c4 * std::cos(self.nu * z);
                Zp = self.nu * (self.c3 * std::cos(self.nu * z) - self.c4 * std::sin(self.nu * z));
                break;
            case ZKind::Hyp:
                Zv = self.c3 * std::sinh(self.nu * z) + self.c4 * std::cosh(self.nu * z);
                Zp = self.nu * (self.c3 * std::cosh(self.nu * z) + self.c4 * std::sinh(self.nu * z));
                break;
            default:
                Zv = self.c3 + self.c4 * z;
                Zp = self.c4;
                break;
        }
        Zpp = self.h * Zv;
        const Jet Z(Zv, 0, Zp, 0, 0, Zpp);
        return R * Z;
    };
    s.box = {0.3, 5.5, -3.0, 3.0};
    s.form = "psi = R(r) Z(z), mu = " + fmt(mu) + ", h = " + fmt(h);
    return s;
}

SeparableSolution separable(double a1, double b1, double h, SeparableSolution::ZKind zkind, double c1,
                            double c3, double c4, double r_max, double tol) {
    SeparableSolution s;
    s.a1 = a1;
    s.b1 = b1;
    s.h = h;
    s.mu = h - b1;
    s.zkind = zkind;
    s.c1 = c1;
    s.c3 = c3;
    s.c4 = c4;
    switch (zkind) {
        case SeparableSolution::ZKind::Osc:
            if (h >= 0) throw std::invalid_argument("separable: oscillatory z-factor needs h = -nu^2 < 0");
            s.nu = std::sqrt(-h);
            break;
        case SeparableSolution::ZKind::Hyp:
            if (h <= 0) throw std::invalid_argument("separable: hyperbolic z-factor needs h > 0");
            s.nu = std::sqrt(h);
            break;
        case SeparableSolution::ZKind::Linear:
            if (h != 0) throw std::invalid_argument("separable: linear z-factor needs h = 0");
            break;
    }
    s.radial = radial_solve(a1, s.mu, r_max, tol);
    return s;
}

// ---------------------------------------------------------------------------
// Particular solutions and superposition
// ---------------------------------------------------------------------------

ClosedFormSolution particular_uniform_field(double a0, double b1) {
    if (b1 == 0) throw std::invalid_argument("particular_uniform_field: b1 must be nonzero");
    ClosedFormSolution s;
    s.family = Family::LinearParticular;
    s.params = {{"a0", a0}, {"b1", b1}};
    s.F = ProfileSpec::affine(a0, 0);
    s.G = ProfileSpec::affine(0, b1);
    s.G.role = ProfileRole::G;
    const double k = -a0 / b1;
    s.domain = [](double r, double) { return r > 0; };
    s.evaluator = [k](double r, double z) {
        if (r <= 0) throw domain_error("particular solution: r must be positive");
        const Jet R = Jet::var_r(r);
        return k * (R * R) + 0.0 * Jet::var_z(z);
    };
    s.box = {0.2, 3.0, -2.0, 2.0};
    s.form = "psi = -(a0/b1) r^2 = " + fmt(k) + " r^2";
    return s;
}

ClosedFormSolution particular_si_ci(double b0, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("particular_si_ci: alpha must be positive");
    ClosedFormSolution s;
    s.family = Family::LinearParticular;
    s.params = {{"b0", b0}, {"alpha", alpha}, {"a1", -alpha * alpha}};
    s.F = ProfileSpec::affine(0, -alpha * alpha);
    s.G = ProfileSpec::affine(b0, 0);
    s.G.role = ProfileRole::G;
    const double amp = b0 / (2 * alpha);
    s.domain = [](double r, double) { return r > 0; };
    s.evaluator = [amp, alpha](double r, double z) {
        if (r <= 0) throw domain_error("particular solution: r must be positive");
        const Jet R = Jet::var_r(r);
        const Jet t = (0.5 * alpha) * (R * R);
        const double tv = t.v;
        const double civ = ci(tv), siv = si(tv);
        const double st = std::sin(tv), ct = std::cos(tv);
        const double f = amp * (st * civ - ct * siv);
        const double fp = amp * (ct * civ + st * siv);
        const double fpp = -f + amp / tv;
        return compose1(f, fp, fpp, t) + 0.0 * Jet::var_z(z);
    };
    s.box = {0.2, 3.0, -2.0, 2.0};
    s.form = "psi = (b0/(2 alpha)) [sin(t) Ci(t) - cos(t) Si(t)], t = alpha r^2/2";
    return s;
}

ClosedFormSolution superpose(const ClosedFormSolution& psi0, const ClosedFormSolution& w1) {
    auto slopes = [](const ProfileSpec& p, double& k0, double& k1) {
        if (p.is_zero()) { k0 = k1 = 0; return true; }
        if (const auto* a = p.as_affine()) { k0 = a->k0; k1 = a->k1; return true; }
        return false;
    };
    double fa0, fa1, ga0, ga1, ha0, ha1, ka0, ka1;
    if (!slopes(psi0.F, fa0, fa1) || !slopes(psi0.G, ga0, ga1) || !slopes(w1.F, ha0, ha1) ||
        !slopes(w1.G, ka0, ka1))
        throw class_mismatch("superpose: both solutions must carry affine profiles");
    if (ha0 != 0 || ka0 != 0)
        throw class_mismatch("superpose: w1 must solve the homogeneous linear equation");
    if (std::abs(fa1 - ha1) > 1e-12 * std::max(1.0, std::abs(fa1)) ||
        std::abs(ga1 - ka1) > 1e-12 * std::max(1.0, std::abs(ga1)))
        throw class_mismatch("superpose: (a1, b1) of the two solutions do not match");

    ClosedFormSolution s;
    s.family = Family::Superposition;
    s.params = {{"a0", fa0}, {"a1", fa1}, {"b0", ga0}, {"b1", ga1}};
    s.F = psi0.F;
    s.G = psi0.G;
    const auto e0 = psi0.evaluator, e1 = w1.evaluator;
    const auto d0 = psi0.domain, d1 = w1.domain;
    s.domain = [d0, d1](double r, double z) { return d0(r, z) && d1(r, z); };
    s.evaluator = [e0, e1](double r, double z) { return e0(r, z) + e1(r, z); };
    s.box = {std::max(psi0.box.r0, w1.box.r0), std::min(psi0.box.r1, w1.box.r1),
             std::max(psi0.box.z0, w1.box.z0), std::min(psi0.box.z1, w1.box.z1)};
    s.form = "superposition: (" + psi0.form + ") + (" + w1.form + ")";
    s.derivation = "superpose";
    return s;
}

} // namespace gs
