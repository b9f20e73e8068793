#include <doctest.h>

#include <cmath>

#include "gs/errors.hpp"
#include "gs/linear.hpp"
#include "gs/residual.hpp"
#include "gs/special_functions.hpp"
#include "support/oracles.hpp"

using namespace gs;

namespace {

// single least-squares scalar for normalization-free comparisons
template <typename F1, typename F2>
double ls_scale(const F1& got, const F2& want, double lo, double hi, int n = 200) {
    double num = 0, den = 0;
    for (int i = 0; i <= n; ++i) {
        const double r = lo + (hi - lo) * i / n;
        num += got(r) * want(r);
        den += want(r) * want(r);
    }
    return num / den;
}

} // namespace

TEST_CASE("series start coefficient: R = r^2 (1 - (mu/8) r^2 + ...)") {
    CHECK(radial_series_beta(0.0) == 0.0);
    CHECK(radial_series_beta(1.0) == doctest::Approx(-0.125));
    CHECK(radial_series_beta(-4.0) == doctest::Approx(0.5));
}

TEST_CASE("regular branch is normalized: R(eps)/eps^2 -> 1") {
    const RadialSolution sol = radial_solve(-1.0, 1.0, 5.0);
    const double e1 = 2e-4, e2 = 1e-3;
    CHECK(std::abs(sol.table.interp_w(e1) / (e1 * e1) - 1.0) < 1e-6);
    CHECK(std::abs(sol.table.interp_w(e2) / (e2 * e2) - 1.0) < 1e-5);
}

TEST_CASE("mu = 0, a1 = -1: numeric branch matches sin(r^2/2) to 1e-8") {
    const RadialSolution sol = radial_solve(-1.0, 0.0, 3.0);
    REQUIRE(sol.closed.has_value());
    auto want = [](double r) { return std::sin(0.5 * r * r); };
    const double scale = ls_scale([&](double r) { return sol.table.interp_w(r); }, want, 0.2, 3.0);
    CHECK(scale == doctest::Approx(2.0).epsilon(1e-8)); // leading term normalization
    for (double r = 0.05; r <= 3.0; r += 0.01)
        CHECK(std::abs(sol.table.interp_w(r) - scale * want(r)) < 1e-8);
}

TEST_CASE("a1 = 0, mu = 1: numeric branch matches r J1(r) to 1e-6") {
    const RadialSolution sol = radial_solve(0.0, 1.0, 10.0);
    REQUIRE(sol.closed.has_value());
    auto want = [](double r) { return r * bessel_j1(r); };
    // scaled to match at r = 1
    const double scale = sol.table.interp_w(1.0) / want(1.0);
    for (double r = 0.05; r <= 10.0; r += 0.05)
        CHECK(std::abs(sol.table.interp_w(r) - scale * want(r)) <=
              1e-6 * std::max(1.0, std::abs(scale * want(r))));
}

TEST_CASE("a1 = -1, mu = 1: bounded oscillation (loose check on the numeric branch)") {
    const RadialSolution sol = radial_solve(-1.0, 1.0, 12.0);
    double early = 0, late = 0;
    for (double r = 0.1; r <= 6.0; r += 0.01) early = std::max(early, std::abs(sol.table.interp_w(r)));
    for (double r = 6.0; r <= 12.0; r += 0.01) late = std::max(late, std::abs(sol.table.interp_w(r)));
    CHECK(late <= 1.5 * early);
    // and it does oscillate: sign changes exist
    int flips = 0;
    double prev = sol.table.interp_w(0.5);
    for (double r = 0.6; r <= 12.0; r += 0.1) {
        const double cur = sol.table.interp_w(r);
        if (prev * cur < 0) ++flips;
        prev = cur;
    }
    CHECK(flips >= 3);
}

TEST_CASE("mu-shift property: radial branch depends on (a1, mu) only") {
    // two (h, b1) pairs with equal mu produce bitwise-identical tables
    const SeparableSolution s1 = separable(-1.0, -2.0, -1.0, SeparableSolution::ZKind::Osc);
    const SeparableSolution s2 = separable(-1.0, -4.0, -3.0, SeparableSolution::ZKind::Osc);
    CHECK(s1.mu == s2.mu);
    REQUIRE(s1.radial.table.samples.size() == s2.radial.table.samples.size());
    for (std::size_t i = 0; i < s1.radial.table.samples.size(); ++i) {
        CHECK(s1.radial.table.samples[i].w == s2.radial.table.samples[i].w);
        CHECK(s1.radial.table.samples[i].wp == s2.radial.table.samples[i].wp);
    }
}

TEST_CASE("separable mu = 0 closed form: psi = sin(r^2/2) sin(z), exact jets") {
    // a1 = -1 (alpha = 1), h = -1 (nu = 1), mu = 0 -> b1 = h - mu = -1
    const SeparableSolution s = separable(-1.0, -1.0, -1.0, SeparableSolution::ZKind::Osc,
                                          0.5, 1.0, 0.0); // c1 scales branch 2sin -> sin
    const auto closed = s.closed_solution();
    REQUIRE(closed.has_value());
    CHECK(closed->value(1.1, 0.7) ==
          doctest::Approx(std::sin(0.5 * 1.1 * 1.1) * std::sin(0.7)).epsilon(1e-12));
    CHECK(residual(*closed, {800}).max_rel < 1e-11);

    // grid residual of the sampled field is second-order convergent
    const GridSpec coarse{0.3, 3.0, -2.0, 2.0, 65, 65};
    const GridSpec fine{0.3, 3.0, -2.0, 2.0, 129, 129};
    const double order =
        grid_convergence_order(s.sample(coarse), s.sample(fine), closed->F, closed->G);
    CHECK(order > 1.7);
    CHECK(order < 2.3);
}

TEST_CASE("h = 0: psi = R(r)(c3 + c4 z) verifies") {
    // mu = -b1; pick b1 = 1 so mu = -1... that has no closed radial form;
    // use b1 = -1, a1 = 0 -> mu = 1 Bessel branch
    const SeparableSolution s = separable(0.0, -1.0, 0.0, SeparableSolution::ZKind::Linear,
                                          1.0, 0.5, 1.0);
    const auto closed = s.closed_solution();
    REQUIRE(closed.has_value());
    CHECK(residual(*closed, {600}).max_rel < 1e-8);
}

TEST_CASE("hyperbolic z-factor: h > 0") {
    const SeparableSolution s = separable(0.0, -1.0, 1.0, SeparableSolution::ZKind::Hyp,
                                          1.0, 0.3, 0.7); // mu = 2 Bessel branch
    const auto closed = s.closed_solution();
    REQUIRE(closed.has_value());
    CHECK(residual(*closed, {600}).max_rel < 1e-8);
    CHECK_THROWS_AS(separable(0.0, -1.0, -1.0, SeparableSolution::ZKind::Hyp),
                    std::invalid_argument);
    CHECK_THROWS_AS(separable(0.0, -1.0, 1.0, SeparableSolution::ZKind::Osc),
                    std::invalid_argument);
}

TEST_CASE("particular solution, uniform-field case: psi0 = -(a0/b1) r^2") {
    const auto s = particular_uniform_field(2.0, -1.0);
    CHECK(s.value(1.3, 0.4) == doctest::Approx(2.0 * 1.3 * 1.3).epsilon(1e-14));
    CHECK(residual(s, {500}).max_abs < 1e-12);
    CHECK_THROWS_AS(particular_uniform_field(2.0, 0.0), std::invalid_argument);
}

TEST_CASE("particular solution, Si/Ci case: residual below 1e-8 on r in [0.2, 3]") {
    const auto s = particular_si_ci(1.0, 1.0);
    std::vector<std::array<double, 2>> pts;
    for (double r = 0.2; r <= 3.0; r += 0.02) pts.push_back({r, 0.3});
    const auto rep = residual_at(s, pts);
    CHECK(rep.max_abs <= 1e-8);
    CHECK(rep.max_rel <= 1e-8);
}

TEST_CASE("superposition: uniform-field particular plus a Bessel separable term") {
    const auto psi0 = particular_uniform_field(2.0, -1.0);
    // w1 = r J1(sqrt(mu) r) cos(nu z) with mu = -nu^2 - b1 = 0.75 (nu = 0.5, b1 = -1)
    const SeparableSolution w1 = separable(0.0, -1.0, -0.25, SeparableSolution::ZKind::Osc,
                                           1.0, 0.0, 1.0);
    CHECK(w1.mu == doctest::Approx(0.75));
    const auto w1c = w1.closed_solution();
    REQUIRE(w1c.has_value());
    const auto sum = superpose(psi0, *w1c);
    CHECK(residual(sum, {800}).max_rel < 1e-9);

    // identity: adding the zero solution changes nothing
    const SeparableSolution zero = separable(0.0, -1.0, -0.25, SeparableSolution::ZKind::Osc,
                                             0.0, 0.0, 1.0);
    const auto sum0 = superpose(psi0, *zero.closed_solution());
    CHECK(sum0.value(1.1, 0.2) == doctest::Approx(psi0.value(1.1, 0.2)).epsilon(1e-14));

    // mismatched (a1, b1) is refused
    const SeparableSolution bad = separable(0.0, -2.0, -0.25, SeparableSolution::ZKind::Osc);
    CHECK_THROWS_AS(superpose(psi0, *bad.closed_solution()), class_mismatch);
}

TEST_CASE("linearity: a sum of two homogeneous solutions still solves") {
    // two Bessel modes of the same (a1, b1) = (0, -1): mu = nu'^2... both closed
    const SeparableSolution s1 = separable(0.0, -1.0, -0.25, SeparableSolution::ZKind::Osc,
                                           1.0, 1.0, 0.0);
    const SeparableSolution s2 = separable(0.0, -1.0, -0.64, SeparableSolution::ZKind::Osc,
                                           0.4, 0.0, 1.0);
    const auto c1 = s1.closed_solution();
    const auto c2 = s2.closed_solution();
    REQUIRE(c1.has_value());
    REQUIRE((c2.has_value()));
    ClosedFormSolution sum = *c1;
    const auto e1 = c1->evaluator, e2 = c2->evaluator;
    sum.evaluator = [e1, e2](double r, double z) { return e1(r, z) + e2(r, z); };
    sum.form = "sum of two separable solutions";
    CHECK(residual(sum, {600}).max_rel < 1e-10);
}

TEST_CASE("radial_solve parameter validation") {
    CHECK_THROWS_AS(radial_solve(0.0, 1.0, 60.0), std::invalid_argument);
    CHECK_THROWS_AS(radial_solve(0.0, 1.0, 5.0, 1e-15), std::invalid_argument);
    CHECK_THROWS_AS(radial_solve(0.0, 1.0, 5.0, 1e-3), std::invalid_argument);
    // negative mu with a1 = 0: no closed form attached, numeric table only
    const RadialSolution sol = radial_solve(0.0, -1.0, 5.0);
    CHECK_FALSE(sol.closed.has_value());
    CHECK(sol.table.samples.size() > 10);
}
