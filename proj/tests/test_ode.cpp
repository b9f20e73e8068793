#include <doctest.h>

#include <cmath>

#include "gs/ode.hpp"

using namespace gs;

TEST_CASE("harmonic oscillator to 2pi") {
    auto f = [](double, double w, double) { return -w; };
    OdeOptions opts;
    opts.tol = 1e-11;
    const auto table = integrate_second_order(f, 0.0, 0.0, 1.0, 2 * 3.14159265358979323846, opts);
    CHECK(std::abs(table.samples.back().w - 0.0) < 1e-8);
    CHECK(std::abs(table.samples.back().wp - 1.0) < 1e-8);
    // dense output between knots
    for (double t : {0.5, 1.7, 3.3, 5.9}) {
        CHECK(std::abs(table.interp_w(t) - std::sin(t)) < 1e-8);
        CHECK(std::abs(table.interp_wp(t) - std::cos(t)) < 1e-6);
    }
    CHECK(table.meta.max_dense_defect <= 100 * opts.tol);
}

TEST_CASE("halving tol at most doubles steps and reduces error") {
    auto f = [](double y, double w, double) { return -w + std::sin(2 * y); };
    auto run = [&](double tol) {
        OdeOptions opts;
        opts.tol = tol;
        return integrate_second_order(f, 0.0, 1.0, 0.0, 10.0, opts);
    };
    const auto coarse = run(1e-7);
    const auto fine = run(5e-8);
    CHECK(fine.meta.steps <= 2 * coarse.meta.steps + 8);
    // exact solution of w'' + w = sin(2y): w_p = -sin(2y)/3
    auto exact = [](double y, double w0p) {
        (void)w0p;
        // w = c1 cos y + c2 sin y - sin(2y)/3 with w(0)=1, w'(0)=0:
        // c1 = 1, c2 = 2/3
        return std::cos(y) + (2.0 / 3.0) * std::sin(y) - std::sin(2 * y) / 3.0;
    };
    const double e_coarse = std::abs(coarse.samples.back().w - exact(10.0, 0));
    const double e_fine = std::abs(fine.samples.back().w - exact(10.0, 0));
    CHECK(e_fine <= e_coarse * 1.05 + 1e-14);
}

TEST_CASE("blow-up truncates with a flag") {
    auto f = [](double, double w, double) { return w * w * w; };
    OdeOptions opts;
    opts.tol = 1e-8;
    opts.blowup = 1e6;
    const auto table = integrate_second_order(f, 0.0, 1.0, 1.0, 100.0, opts);
    CHECK(table.meta.truncated_blowup);
    CHECK(std::abs(table.samples.back().y) < 100.0);
}

TEST_CASE("backward integration") {
    auto f = [](double, double w, double) { return -w; };
    OdeOptions opts;
    opts.tol = 1e-11;
    const auto table = integrate_second_order(f, 1.0, std::sin(1.0), std::cos(1.0), 0.25, opts);
    CHECK_FALSE(table.increasing());
    CHECK(std::abs(table.interp_w(0.5) - std::sin(0.5)) < 1e-8);
    CHECK(std::abs(table.samples.back().w - std::sin(0.25)) < 1e-8);
}

TEST_CASE("interpolation outside the span throws") {
    auto f = [](double, double w, double) { return -w; };
    const auto table = integrate_second_order(f, 0.0, 0.0, 1.0, 1.0);
    CHECK_THROWS_AS(table.interp_w(1.5), numeric_error);
    CHECK(table.covers(0.5));
    CHECK_FALSE(table.covers(-0.1));
}
