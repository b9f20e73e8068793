#include "gs/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gs {

namespace {

using State = std::array<double, 2>; // (w, w')

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                 e6 = 187.0 / 2100, e7 = 1.0 / 40;

struct StepResult {
    State y5;     // 5th order solution
    State err;    // y5 - y4
};

StepResult dp_step(const Rhs2& f, double t, const State& u, double h) {
    auto deriv = [&](double tt, const State& s) -> State { return {s[1], f(tt, s[0], s[1])}; };
    const State k1 = deriv(t, u);
    const State k2 = deriv(t + c2 * h, {u[0] + h * a21 * k1[0], u[1] + h * a21 * k1[1]});
    const State k3 = deriv(t + c3 * h, {u[0] + h * (a31 * k1[0] + a32 * k2[0]),
                                        u[1] + h * (a31 * k1[1] + a32 * k2[1])});
    const State k4 = deriv(t + c4 * h, {u[0] + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                                        u[1] + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])});
    const State k5 = deriv(t + c5 * h,
                           {u[0] + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                            u[1] + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])});
    const State k6 = deriv(t + h, {u[0] + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
                                   u[1] + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1])});
    State y5;
    for (int i = 0; i < 2; ++i)
        y5[i] = u[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const State k7 = deriv(t + h, y5);
    State y4, err;
    for (int i = 0; i < 2; ++i) {
        y4[i] = u[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        err[i] = y5[i] - y4[i];
    }
    return {y5, err};
}

double hermite(double t, double h, double w0, double wp0, double w1, double wp1) {
    // t in [0, 1] across the step of width h
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * w0 + (t3 - 2 * t2 + t) * h * wp0 + (-2 * t3 + 3 * t2) * w1 +
           (t3 - t2) * h * wp1;
}

double hermite_deriv(double t, double h, double w0, double wp0, double w1, double wp1) {
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * w0 + (3 * t2 - 4 * t + 1) * h * wp0 + (-6 * t2 + 6 * t) * w1 +
            (3 * t2 - 2 * t) * h * wp1) / h;
}

} // namespace

double OdeSolutionTable::y_min() const { return std::min(samples.front().y, samples.back().y); }
double OdeSolutionTable::y_max() const { return std::max(samples.front().y, samples.back().y); }

std::size_t OdeSolutionTable::locate(double y) const {
    if (!covers(y)) throw numeric_error("ODE table interpolation outside the integrated span");
    const bool inc = increasing();
    std::size_t lo = 0, hi = samples.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        const bool left = inc ? (samples[mid].y <= y) : (samples[mid].y >= y);
        if (left)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double OdeSolutionTable::interp_w(double y) const {
    const std::size_t i = locate(y);
    const OdeSample &s0 = samples[i], &s1 = samples[i + 1];
    const double h = s1.y - s0.y;
    return hermite((y - s0.y) / h, h, s0.w, s0.wp, s1.w, s1.wp);
}

double OdeSolutionTable::interp_wp(double y) const {
    const std::size_t i = locate(y);
    const OdeSample &s0 = samples[i], &s1 = samples[i + 1];
    const double h = s1.y - s0.y;
    return hermite_deriv((y - s0.y) / h, h, s0.w, s0.wp, s1.w, s1.wp);
}

OdeSolutionTable integrate_second_order(const Rhs2& f, double y0, double w0, double wp0, double y_end,
                                        const OdeOptions& opts) {
    if (y_end == y0) throw std::invalid_argument("integrate_second_order: empty span");
    const double dir = (y_end > y0) ? 1.0 : -1.0;
    const double span = std::abs(y_end - y0);

    OdeSolutionTable out;
    out.meta.tol = opts.tol;
    out.samples.push_back({y0, w0, wp0});

    double t = y0;
    State u{w0, wp0};
    double h = opts.initial_step > 0 ? opts.initial_step : std::min(1e-2 * span, span);
    if (opts.max_step > 0) h = std::min(h, opts.max_step);
    h *= dir;

    double err_prev = 1.0;
    const double safety = 0.9, alpha = 0.7 / 5.0, beta = 0.4 / 5.0;

    while (dir * (y_end - t) > 0) {
        if (out.meta.steps >= opts.max_steps)
            throw numeric_error("integrate_second_order: step budget exhausted");
        if (dir * (t + h - y_end) > 0) h = y_end - t;

        const StepResult st = dp_step(f, t, u, h);
        double errnorm = 0;
        for (int i = 0; i < 2; ++i) {
            const double sc = opts.abs_floor + opts.tol * std::max(std::abs(u[i]), std::abs(st.y5[i]));
            const double e = st.err[i] / sc;
            errnorm += e * e;
        }
        errnorm = std::sqrt(0.5 * errnorm);

        if (!std::isfinite(errnorm) || errnorm > 1.0) {
            ++out.meta.rejected;
            if (out.meta.rejected > opts.max_rejections)
                throw numeric_error("integrate_second_order: too many step rejections (stiff failure)");
            const double fac = std::isfinite(errnorm)
                                   ? std::max(0.2, safety * std::pow(errnorm, -alpha))
                                   : 0.2;
            h *= std::min(fac, 0.9);
            continue;
        }

        if (opts.check_dense) {
            // re-integrate the step as two half-steps and compare the cubic
            // Hermite at the midpoint against the recomputed state
            const StepResult h1 = dp_step(f, t, u, 0.5 * h);
            const double wm = hermite(0.5, h, u[0], u[1], st.y5[0], st.y5[1]);
            const double sc = 1.0 + std::max(std::abs(u[0]), std::abs(st.y5[0]));
            out.meta.max_dense_defect =
                std::max(out.meta.max_dense_defect, std::abs(wm - h1.y5[0]) / sc);
        }

        t += h;
        u = st.y5;
        ++out.meta.steps;
        out.samples.push_back({t, u[0], u[1]});

        if (std::abs(u[0]) > opts.blowup || std::abs(u[1]) > opts.blowup) {
            out.meta.truncated_blowup = true;
            break;
        }

        double fac = safety * std::pow(std::max(errnorm, 1e-10), -alpha) * std::pow(err_prev, beta);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (opts.max_step > 0 && std::abs(h) > opts.max_step) h = dir * opts.max_step;
        err_prev = std::max(errnorm, 1e-10);
    }

    return out;
}

} // namespace gs
