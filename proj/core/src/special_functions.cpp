#include "gs/special_functions.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>

#include "gs/errors.hpp"

namespace gs {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Sine / cosine integral
// ---------------------------------------------------------------------------

// Power series, good to ~1e-14 for x <= 6 (cancellation stays mild there).
void sici_series(double x, double& si_out, double& ci_out) {
    // Si: sum (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
    double term = x;
    double sum_si = x;
    const double x2 = x * x;
    for (int k = 1; k < 64; ++k) {
        term *= -x2 / (2.0 * k * (2.0 * k + 1.0));
        const double add = term / (2.0 * k + 1.0);
        sum_si += add;
        if (std::abs(add) < 1e-18 * std::abs(sum_si)) break;
    }
    // Ci: gamma + log x + sum (-1)^k x^(2k) / (2k (2k)!)
    double termc = 1.0;
    double sum_c = 0.0;
    for (int k = 1; k < 64; ++k) {
        termc *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
        const double add = termc / (2.0 * k);
        sum_c += add;
        if (std::abs(add) < 1e-18) break;
    }
    si_out = sum_si;
    ci_out = euler_gamma + std::log(x) + sum_c;
}

// Modified Lentz continued fraction for the complex function
//   H(x) = integral over [x, inf) of exp(i t)/t dt  =  -Ci(x) + i (pi/2 - Si(x))
// written as exp(ix) * CF with CF = 1/(1 - ix + 1/(1 + 1/(3 - ix + 2/(1 + ...)))).
// Converges geometrically for x of order one and larger.
void sici_cf(double x, double& si_out, double& ci_out) {
    using C = std::complex<double>;
    const double tiny = 1e-290;
    C b(1.0, x);
    C c(1.0 / tiny, 0.0);
    C d = 1.0 / b;
    C h = d;
    for (int i = 1; i < 200; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const C del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    h *= C(std::cos(x), -std::sin(x));
    ci_out = -h.real();
    si_out = kPi / 2.0 + h.imag();
}

constexpr double kSiCiSwitch = 4.0;

// ---------------------------------------------------------------------------
// Bessel J0, J1, Y0, Y1
// ---------------------------------------------------------------------------

double digamma_int(int n) { // psi(n) for integer n >= 1
    double s = -euler_gamma;
    for (int j = 1; j < n; ++j) s += 1.0 / j;
    return s;
}

double j_series(int n, double x) {
    const double q = 0.25 * x * x;
    double term = (n == 0) ? 1.0 : 0.5 * x;
    double sum = term;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (k * (k + static_cast<double>(n)));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

// DLMF 10.8.1 ascending series for Y0, Y1.
double y_series(int n, double x) {
    const double q = 0.25 * x * x;
    double result = (2.0 / kPi) * std::log(0.5 * x) * j_series(n, x);
    if (n == 1) result -= 2.0 / (kPi * x);

    double term = (n == 0) ? 1.0 : 0.5 * x;
    double sum = term * (digamma_int(1) + digamma_int(n + 1));
    for (int k = 1; k < 80; ++k) {
        term *= -q / (k * (k + static_cast<double>(n)));
        const double add = term * (digamma_int(k + 1) + digamma_int(n + k + 1));
        sum += add;
        if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    result -= sum / kPi;
    return result;
}

// Hankel asymptotic expansion; series truncated at its smallest term.
// For x >= 12 the smallest term is < 1e-10, and well below 1e-13 by x = 16.
void hankel_pq(int n, double x, double& p, double& q) {
    const double mu = 4.0 * n * n;
    double term = 1.0;
    p = 1.0;
    q = 0.0;
    double prev = std::abs(term);
    for (int k = 1; k < 40; ++k) {
        const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= num / (8.0 * k * x);
        if (std::abs(term) > prev) break; // divergence point of the asymptotic series
        prev = std::abs(term);
        const int phase = (k / 2) % 2; // + + - - + + ...
        const double signed_term = phase ? -term : term;
        if (k % 2 == 1)
            q += signed_term;
        else
            p += signed_term;
        if (std::abs(term) < 1e-17) break;
    }
}

constexpr double kBesselSwitch = 12.0;

double bessel_j(int n, double x) {
    if (x < kBesselSwitch) return j_series(n, x);
    double p, q;
    hankel_pq(n, x, p, q);
    const double omega = x - (0.5 * n + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(omega) - q * std::sin(omega));
}

double bessel_y(int n, double x) {
    if (x <= 0) throw domain_error("Y" + std::to_string(n) + " requires x > 0");
    if (x < kBesselSwitch) return y_series(n, x);
    double p, q;
    hankel_pq(n, x, p, q);
    const double omega = x - (0.5 * n + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(omega) + q * std::cos(omega));
}

} // namespace

double si(double x) {
    if (x < 0) return -si(-x);
    if (x == 0) return 0.0;
    double s, c;
    if (x <= kSiCiSwitch)
        sici_series(x, s, c);
    else
        sici_cf(x, s, c);
    return s;
}

double ci(double x) {
    if (x <= 0) throw domain_error("Ci requires x > 0");
    double s, c;
    if (x <= kSiCiSwitch)
        sici_series(x, s, c);
    else
        sici_cf(x, s, c);
    return c;
}

double bessel_j0(double x) { return bessel_j(0, std::abs(x)); }

double bessel_j1(double x) {
    if (x < 0) return -bessel_j(1, -x); // J1 is odd
    if (x == 0) return 0.0;
    return bessel_j(1, x);
}

double bessel_y0(double x) { return bessel_y(0, x); }
double bessel_y1(double x) { return bessel_y(1, x); }

double bessel_j1_prime(double x) {
    if (x == 0) return 0.5; // J1(x) ~ x/2
    return bessel_j0(x) - bessel_j1(x) / x;
}

double bessel_j1_second(double x) {
    if (x == 0) return 0.0;
    // from x^2 J1'' + x J1' + (x^2 - 1) J1 = 0
    return -bessel_j1_prime(x) / x - (1.0 - 1.0 / (x * x)) * bessel_j1(x);
}

double bessel_y1_prime(double x) { return bessel_y0(x) - bessel_y1(x) / x; }

double bessel_y1_second(double x) {
    return -bessel_y1_prime(x) / x - (1.0 - 1.0 / (x * x)) * bessel_y1(x);
}

} // namespace gs
