#pragma once

// Second-order truncated Taylor arithmetic in the two independents (r, z).
//
// A Jet carries a value together with its exact first and second partial
// derivatives at a point. Arithmetic propagates the chain and product rules
// through second order, so derivatives of composite closed forms are exact
// up to rounding. This is all the differential structure the Grad-Shafranov
// operator psi_rr - psi_r/r + psi_zz needs.

#include <cmath>
#include <limits>
#include <ostream>

#include "gs/errors.hpp"

namespace gs {

struct Jet {
    double v = 0;    ///< value
    double dr = 0;   ///< d/dr
    double dz = 0;   ///< d/dz
    double drr = 0;  ///< d2/dr2
    double drz = 0;  ///< d2/drdz
    double dzz = 0;  ///< d2/dz2

    constexpr Jet() = default;
    constexpr Jet(double value) : v(value) {}
    constexpr Jet(double value, double d_r, double d_z, double d_rr, double d_rz, double d_zz)
        : v(value), dr(d_r), dz(d_z), drr(d_rr), drz(d_rz), dzz(d_zz) {}

    /// Seed the coordinate r at (r0, z0): value r0, dr = 1, everything else 0.
    static constexpr Jet var_r(double r0) { return {r0, 1, 0, 0, 0, 0}; }
    /// Seed the coordinate z at (r0, z0).
    static constexpr Jet var_z(double z0) { return {z0, 0, 1, 0, 0, 0}; }
    static constexpr Jet constant(double c) { return {c}; }

    friend constexpr Jet operator+(const Jet& a, const Jet& b) {
        return {a.v + b.v, a.dr + b.dr, a.dz + b.dz, a.drr + b.drr, a.drz + b.drz, a.dzz + b.dzz};
    }
    friend constexpr Jet operator-(const Jet& a, const Jet& b) {
        return {a.v - b.v, a.dr - b.dr, a.dz - b.dz, a.drr - b.drr, a.drz - b.drz, a.dzz - b.dzz};
    }
    friend constexpr Jet operator-(const Jet& a) {
        return {-a.v, -a.dr, -a.dz, -a.drr, -a.drz, -a.dzz};
    }
    friend constexpr Jet operator+(const Jet& a) { return a; }

    // product rule through second order
    friend constexpr Jet operator*(const Jet& a, const Jet& b) {
        return {a.v * b.v,
                a.dr * b.v + a.v * b.dr,
                a.dz * b.v + a.v * b.dz,
                a.drr * b.v + 2 * a.dr * b.dr + a.v * b.drr,
                a.drz * b.v + a.dr * b.dz + a.dz * b.dr + a.v * b.drz,
                a.dzz * b.v + 2 * a.dz * b.dz + a.v * b.dzz};
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.v == 0.0) throw domain_error("division by zero");
        const double w = a.v / b.v;
        const double wr = (a.dr - w * b.dr) / b.v;
        const double wz = (a.dz - w * b.dz) / b.v;
        return {w, wr, wz,
                (a.drr - 2 * wr * b.dr - w * b.drr) / b.v,
                (a.drz - wr * b.dz - wz * b.dr - w * b.drz) / b.v,
                (a.dzz - 2 * wz * b.dz - w * b.dzz) / b.v};
    }

    friend constexpr Jet operator*(double s, const Jet& a) {
        return {s * a.v, s * a.dr, s * a.dz, s * a.drr, s * a.drz, s * a.dzz};
    }
    friend constexpr Jet operator*(const Jet& a, double s) { return s * a; }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
    friend constexpr Jet operator+(const Jet& a, double s) {
        return {a.v + s, a.dr, a.dz, a.drr, a.drz, a.dzz};
    }
    friend constexpr Jet operator+(double s, const Jet& a) { return a + s; }
    friend constexpr Jet operator-(const Jet& a, double s) { return a + (-s); }
    friend constexpr Jet operator-(double s, const Jet& a) { return (-a) + s; }

    friend std::ostream& operator<<(std::ostream& out, const Jet& j) {
        return out << "{v=" << j.v << ", dr=" << j.dr << ", dz=" << j.dz
                   << ", drr=" << j.drr << ", drz=" << j.drz << ", dzz=" << j.dzz << "}";
    }
};

/// Univariate chain rule: given f, f', f'' evaluated at u.v, return the jet
/// of f(u(r, z)).
constexpr Jet compose1(double f, double fp, double fpp, const Jet& u) {
    return {f,
            fp * u.dr,
            fp * u.dz,
            fpp * u.dr * u.dr + fp * u.drr,
            fpp * u.dr * u.dz + fp * u.drz,
            fpp * u.dz * u.dz + fp * u.dzz};
}

/// Bivariate chain rule: outer jet `f` holds derivatives with respect to the
/// inner values (u, v); returns the jet of f(u(r,z), v(r,z)). Used by the
/// finite symmetry maps, which evaluate a solution at transformed coordinates.
constexpr Jet compose2(const Jet& f, const Jet& u, const Jet& v) {
    // f.dr/f.dz are read as df/du, df/dv; f.drr/f.drz/f.dzz as the Hessian in (u, v).
    return {f.v,
            f.dr * u.dr + f.dz * v.dr,
            f.dr * u.dz + f.dz * v.dz,
            f.drr * u.dr * u.dr + 2 * f.drz * u.dr * v.dr + f.dzz * v.dr * v.dr + f.dr * u.drr + f.dz * v.drr,
            f.drr * u.dr * u.dz + f.drz * (u.dr * v.dz + u.dz * v.dr) + f.dzz * v.dr * v.dz + f.dr * u.drz +
                f.dz * v.drz,
            f.drr * u.dz * u.dz + 2 * f.drz * u.dz * v.dz + f.dzz * v.dz * v.dz + f.dr * u.dzz + f.dz * v.dzz};
}

inline bool is_integral_exponent(double p) {
    return p == std::floor(p) && std::abs(p) < 1e9;
}

/// u^p for real constant p. Integral p works for any base; fractional p
/// requires u > 0 except that 0^p = 0 is allowed for p > 0 (derivatives then
/// diverge and are reported as infinities, value stays exact).
inline Jet pow(const Jet& u, double p, int node = -1) {
    if (p == 0.0) return Jet::constant(1.0);
    if (p == 1.0) return u;
    const bool integral = is_integral_exponent(p);
    if (u.v == 0.0) {
        if (p < 0) throw domain_error("negative power of zero", node);
        if (integral || p > 0) {
            const double inf = std::numeric_limits<double>::infinity();
            double d1 = p > 1 ? 0.0 : inf;
            double d2 = p > 2 ? 0.0 : (p == 2.0 ? 2.0 : inf);
            return compose1(0.0, d1, d2, u);
        }
    }
    if (!integral && u.v < 0) throw domain_error("fractional power of a negative base", node);
    const double f = std::pow(u.v, p);
    const double fp = p * std::pow(u.v, p - 1);
    const double fpp = p * (p - 1) * std::pow(u.v, p - 2);
    return compose1(f, fp, fpp, u);
}

/// General u^w via exp(w log u); requires u > 0.
inline Jet pow(const Jet& u, const Jet& w, int node = -1);

inline Jet exp(const Jet& u) {
    const double e = std::exp(u.v);
    return compose1(e, e, e, u);
}

inline Jet log(const Jet& u, int node = -1) {
    if (u.v <= 0) throw domain_error("log of a non-positive value", node);
    return compose1(std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v), u);
}

inline Jet sqrt(const Jet& u, int node = -1) {
    if (u.v < 0) throw domain_error("square root of a negative value", node);
    if (u.v == 0.0) return pow(u, 0.5, node);
    const double s = std::sqrt(u.v);
    return compose1(s, 0.5 / s, -0.25 / (s * u.v), u);
}

inline Jet sin(const Jet& u) { return compose1(std::sin(u.v), std::cos(u.v), -std::sin(u.v), u); }
inline Jet cos(const Jet& u) { return compose1(std::cos(u.v), -std::sin(u.v), -std::cos(u.v), u); }
inline Jet sinh(const Jet& u) { return compose1(std::sinh(u.v), std::cosh(u.v), std::sinh(u.v), u); }
inline Jet cosh(const Jet& u) { return compose1(std::cosh(u.v), std::sinh(u.v), std::cosh(u.v), u); }

inline Jet pow(const Jet& u, const Jet& w, int node) {
    if (w.dr == 0 && w.dz == 0 && w.drr == 0 && w.drz == 0 && w.dzz == 0) return pow(u, w.v, node);
    if (u.v <= 0) throw domain_error("power with non-constant exponent needs a positive base", node);
    return exp(w * log(u, node));
}

} // namespace gs
