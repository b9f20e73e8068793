#pragma once

// The linear Grad-Shafranov case (F and G affine in psi): separable
// solutions R(r) Z(z), the regular-at-axis radial branch, the particular
// solutions of the two inhomogeneous subcases, and superposition.

#include <optional>

#include "gs/catalog.hpp"
#include "gs/grid.hpp"
#include "gs/ode.hpp"

namespace gs {

/// Closed radial forms attached when available. All are normalized by a pair
/// of free coefficients; the regular branch corresponds to c2 = 0.
struct RadialClosedForm {
    enum class Kind {
        BesselJ1Y1, // a1 = 0, mu > 0:  R = r (c1 J1(sqrt(mu) r) + c2 Y1(sqrt(mu) r))
        SinCos,     // mu = 0, a1 < 0:  R = c1 sin(alpha r^2/2) + c2 cos(alpha r^2/2)
    };
    Kind kind = Kind::SinCos;
    double mu = 0;
    double alpha = 0;
    double c1 = 1, c2 = 0;

    double value(double r) const;
    double deriv(double r) const;
    double second(double r) const;
};

/// Regular-at-axis radial branch of R'' - R'/r + mu R = a1 r^2 R, normalized
/// so that R / r^2 -> 1 at the axis. Started from the series
/// R = r^2 (1 - (mu/8) r^2 + ((a1 + mu^2/8)/24) r^4) at r = 1e-4.
struct RadialSolution {
    double a1 = 0, mu = 0;
    OdeSolutionTable table;
    std::optional<RadialClosedForm> closed; ///< normalized regular branch when available

    double value(double r) const;
    double deriv(double r) const;
};

RadialSolution radial_solve(double a1, double mu, double r_max, double tol = 1e-12);

/// Coefficient of r^4 in the series start r^2 (1 + beta r^2 + ...): -mu/8.
double radial_series_beta(double mu);

// ---------------------------------------------------------------------------
// Separable solutions of the homogeneous linear equation
// ---------------------------------------------------------------------------

struct SeparableSolution {
    enum class ZKind { Osc, Hyp, Linear };

    double a1 = 0, b1 = 0, h = 0;
    double mu = 0; ///< mu = h - b1, exactly
    ZKind zkind = ZKind::Osc;
    double nu = 0;               ///< |h| = nu^2 for Osc / Hyp
    double c3 = 0, c4 = 1;       ///< z-factor coefficients
    RadialSolution radial;       ///< regular branch, radial scale folded into c1
    double c1 = 1;               ///< scale applied to the radial branch

    double z_factor(double z) const;
    double z_factor_second(double z) const;
    double value(double r, double z) const;
    GridField sample(const GridSpec& grid) const;

    /// Exact-jet solution when the radial factor has a closed form.
    std::optional<ClosedFormSolution> closed_solution() const;
};

/// Build R(r) Z(z) with Z'' = h Z. The z-kind must match the sign of h
/// (Osc: h < 0 with h = -nu^2, Hyp: h > 0, Linear: h = 0).
SeparableSolution separable(double a1, double b1, double h, SeparableSolution::ZKind zkind,
                            double c1 = 1, double c3 = 0, double c4 = 1, double r_max = 12,
                            double tol = 1e-12);

// ---------------------------------------------------------------------------
// Particular solutions and superposition
// ---------------------------------------------------------------------------

/// Case F = a0, G = b1 psi (b1 nonzero): psi0 = -(a0/b1) r^2.
ClosedFormSolution particular_uniform_field(double a0, double b1);

/// Case F = a1 psi with a1 = -alpha^2 < 0, G = b0: the sine/cosine-integral
/// particular solution
///   psi0(r) = (b0/(2 alpha)) [sin(t) Ci(t) - cos(t) Si(t)],  t = alpha r^2 / 2.
/// (Variation of parameters for psi_tt + psi = b0/(2 alpha t); the cos*Si
/// pairing is what the derivation produces, and the residual check is the
/// arbiter.)
ClosedFormSolution particular_si_ci(double b0, double alpha);

/// psi0 + w1 where w1 solves the homogeneous linear equation with the same
/// (a1, b1); mismatched slopes are refused.
ClosedFormSolution superpose(const ClosedFormSolution& psi0, const ClosedFormSolution& w1);

} // namespace gs
