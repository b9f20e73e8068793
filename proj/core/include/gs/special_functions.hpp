#pragma once

// Special functions needed by the solution catalog: sine and cosine
// integrals (linear case with F proportional to psi) and first-kind /
// second-kind Bessel functions of orders 0 and 1 (linear case with F = 0).
//
// Everything is implemented in-repo: power series for small argument and a
// convergent continued fraction (Si/Ci) or the Hankel asymptotic series
// (Bessel) for large argument. Switch points were fixed by matching against
// quadrature oracles of the defining integrals; see the unit tests.

namespace gs {

/// Si(x) = integral of sin(t)/t over [0, x]. Odd in x. Absolute error
/// below 1e-12 on |x| <= 100.
double si(double x);

/// Ci(x) = gamma_E + log(x) + integral of (cos(t) - 1)/t over [0, x].
/// Requires x > 0; absolute error below 1e-12 on (0, 100].
double ci(double x);

double bessel_j0(double x);
double bessel_y0(double x); ///< requires x > 0
double bessel_j1(double x); ///< defined for x >= 0 (odd continuation used for x < 0)
double bessel_y1(double x); ///< requires x > 0

// Derivatives, used to build exact jets of Bessel-valued closed forms.
double bessel_j1_prime(double x);       ///< J1' = J0 - J1/x
double bessel_j1_second(double x);      ///< from Bessel's equation
double bessel_y1_prime(double x);
double bessel_y1_second(double x);

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

} // namespace gs
