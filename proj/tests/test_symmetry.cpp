#include <doctest.h>

#include <cmath>
#include <random>

#include "gs/catalog.hpp"
#include "gs/errors.hpp"
#include "gs/residual.hpp"
#include "gs/symmetry.hpp"

using namespace gs;
using namespace gs::generators;

TEST_CASE("[X1(-1/4), X''] = X''") {
    const PointGenerator lhs = commutator(x1(-0.25), x_second(0.0));
    CHECK(generators_equal(lhs, x_second(0.0), 50, 1e-10));
}

TEST_CASE("[V, V] = 0 for every built-in") {
    const PointGenerator zero{Expr::constant(0), Expr::constant(0), Expr::constant(0), "0"};
    for (const PointGenerator& v :
         {z_translate(), scale_psi(), scale_rz(), x1(1.0), x1_prime(2.0, 0.5), x_second(0.3),
          x2(1.0), y_cond_kappa(1.5), y_rot(), y_weak(-1.0)}) {
        CHECK(generators_equal(commutator(v, v), zero, 30, 1e-12));
    }
}

TEST_CASE("[Z_TRANSLATE, X''] = 2 X1(-1/4), components (2r, 2z, psi)") {
    const PointGenerator got = commutator(z_translate(), x_second(0.0));
    CHECK(generators_equal(got, scaled(2.0, x1(-0.25)), 50, 1e-12));
    // the components directly
    CHECK(got.xi_r.eval(1.3, 0.7, 2.0) == doctest::Approx(2 * 1.3));
    CHECK(got.xi_z.eval(1.3, 0.7, 2.0) == doctest::Approx(2 * 0.7));
    CHECK(got.eta.eval(1.3, 0.7, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("Jacobi identity on random built-in triples") {
    const std::vector<PointGenerator> gens = {z_translate(), x1(-0.25), x_second(0.0),
                                              scale_psi(), y_rot()};
    const PointGenerator zero{Expr::constant(0), Expr::constant(0), Expr::constant(0), "0"};
    std::mt19937 rng(4);
    for (int t = 0; t < 6; ++t) {
        const auto& A = gens[rng() % gens.size()];
        const auto& B = gens[rng() % gens.size()];
        const auto& C = gens[rng() % gens.size()];
        PointGenerator j1 = commutator(A, commutator(B, C));
        PointGenerator j2 = commutator(B, commutator(C, A));
        PointGenerator j3 = commutator(C, commutator(A, B));
        PointGenerator sum{j1.xi_r + j2.xi_r + j3.xi_r, j1.xi_z + j2.xi_z + j3.xi_z,
                           j1.eta + j2.eta + j3.eta, "jacobi"};
        CHECK(generators_equal(sum, zero, 40, 1e-9));
    }
}

TEST_CASE("scaling map: identity at lambda = 0 and fixed point psi = A^2 r^4") {
    const auto s = instantiate(Family::CylQuartic, {{"a", 4.0}, {"b", 4.0}});
    const auto id = scaling_map(s, 0.0, -2.0, 0.0);
    const auto moved = scaling_map(s, 0.45, -2.0, 0.0);
    std::mt19937 rng(10);
    std::uniform_real_distribution<double> ur(0.3, 1.2), uz(-0.8, 0.8);
    for (int i = 0; i < 100; ++i) {
        const double r = ur(rng), z = uz(rng);
        CHECK(id.value(r, z) == doctest::Approx(s.value(r, z)).epsilon(1e-14));
        // q = -2, c = 0 scaling fixes A^2 r^4
        CHECK(moved.value(r, z) == doctest::Approx(s.value(r, z)).epsilon(1e-12));
    }
}

TEST_CASE("scaling map preserves the residual on a power-family solution") {
    const auto s = instantiate(Family::WeakPower, {{"q", -0.5}, {"sigma", 2.0}, {"a", -1.0}, {"b", 0.0}});
    const auto mapped = scaling_map(s, 0.3, -0.5, 0.0);
    const auto rep = residual(mapped, {1000});
    CHECK(rep.max_rel < 1e-9);
    // class mismatch is refused
    const auto lc = instantiate(Family::LogCyl, {{"a", 2.0}, {"b", 2.0}});
    CHECK_THROWS_AS(scaling_map(lc, 0.3, -0.5, 0.0), class_mismatch);
    CHECK_THROWS_AS(scaling_map(s, 0.3, -2.0, 0.0), class_mismatch); // wrong q
}

TEST_CASE("exceptional map: identity at lambda = 0") {
    const auto seed = instantiate(Family::WeakPower, {{"q", -0.25}, {"sigma", -1.0}, {"A", -1.0}});
    const auto id = exceptional_map(seed, 0.0);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ur(0.4, 2.2), uz(-1.0, 1.0);
    int n = 0;
    while (n < 200) {
        const double r = ur(rng), z = uz(rng);
        if (!seed.in_domain(r, z)) continue;
        ++n;
        CHECK(id.value(r, z) == doctest::Approx(seed.value(r, z)).epsilon(1e-14));
    }
}

TEST_CASE("exceptional map of the (r^2 - z^2)^(1/4) seed equals the D-shaped family") {
    const auto seed = instantiate(Family::WeakPower, {{"q", -0.25}, {"sigma", -1.0}, {"A", -1.0}});
    const auto mapped = exceptional_map(seed, 1.0);
    const auto dshape = instantiate(Family::DShape, {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}});
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> ur(dshape.box.r0, dshape.box.r1),
        uz(dshape.box.z0, dshape.box.z1);
    int n = 0;
    while (n < 1000) {
        const double r = ur(rng), z = uz(rng);
        if (!dshape.in_domain(r, z) || !mapped.in_domain(r, z)) continue;
        ++n;
        const double a = mapped.value(r, z), b = dshape.value(r, z);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("exceptional map: psi = A sqrt(r) is a fixed point") {
    const auto s = instantiate(Family::SqrtR, {{"a", 1.0}, {"b", -7.0 / 4.0}});
    const auto mapped = exceptional_map(s, 0.8);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ur(0.4, 2.0), uz(-0.9, 0.9);
    int n = 0;
    while (n < 200) {
        const double r = ur(rng), z = uz(rng);
        if (!mapped.in_domain(r, z)) continue;
        ++n;
        CHECK(mapped.value(r, z) == doctest::Approx(s.value(r, z)).epsilon(1e-12));
    }
}

TEST_CASE("exceptional map composes additively in lambda") {
    const auto seed = instantiate(Family::WeakPower, {{"q", -0.25}, {"sigma", -1.0}, {"A", -1.0}});
    const auto one = exceptional_map(seed, 0.4);
    const auto two = exceptional_map(one, 0.35);
    const auto direct = exceptional_map(seed, 0.75);
    std::mt19937 rng(14);
    std::uniform_real_distribution<double> ur(0.2, 1.4), uz(-1.2, 0.4);
    int n = 0;
    while (n < 100) {
        const double r = ur(rng), z = uz(rng);
        if (!two.in_domain(r, z) || !direct.in_domain(r, z)) continue;
        ++n;
        const double a = two.value(r, z), b = direct.value(r, z);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("exceptional map images pass the residual with unchanged profiles") {
    const auto seed = instantiate(Family::WeakPower, {{"q", -0.25}, {"sigma", -1.0}, {"A", -1.0}});
    const auto mapped = exceptional_map(seed, 0.6);
    CHECK(residual(mapped, {800}).max_rel < 1e-9);
}

TEST_CASE("exp-case map: identity, fixed point, residual preservation") {
    const auto s = instantiate(Family::LogCyl, {{"a", 2.0}, {"b", 2.0}});
    const auto id = exp_case_map(s, 0.0);
    const auto moved = exp_case_map(s, 0.7);
    std::mt19937 rng(15);
    std::uniform_real_distribution<double> ur(0.5, 1.8), uz(-0.8, 0.8);
    for (int i = 0; i < 100; ++i) {
        const double r = ur(rng), z = uz(rng);
        CHECK(id.value(r, z) == doctest::Approx(s.value(r, z)).epsilon(1e-14));
        // -2 log(r e^l) + 2 l = -2 log r
        CHECK(moved.value(r, z) == doctest::Approx(s.value(r, z)).epsilon(1e-13));
    }
    CHECK(residual(moved, {500}).max_rel < 1e-10);
    const auto cyl = instantiate(Family::CylQuartic, {{"a", 4.0}, {"b", 4.0}});
    CHECK_THROWS_AS(exp_case_map(cyl, 0.5), class_mismatch);
}

TEST_CASE("X''-invariant solutions stay X''-invariant under the scaling map") {
    // psi = A sqrt(r) is invariant under both X1 and X''; its scaling image
    // must keep the X'' invariance defect at zero
    const auto s = instantiate(Family::SqrtR, {{"a", 1.0}, {"b", -7.0 / 4.0}});
    const PointGenerator xs = x_second(0.0);
    std::mt19937 rng(16);
    std::uniform_real_distribution<double> ur(0.4, 2.0), uz(-0.9, 0.9);
    for (int i = 0; i < 50; ++i) {
        const double r = ur(rng), z = uz(rng);
        CHECK(std::abs(invariance_defect(xs, s, r, z)) < 1e-9);
    }
    const auto mapped = scaling_map(s, 0.5, -0.25, 0.0);
    for (int i = 0; i < 50; ++i) {
        const double r = ur(rng), z = uz(rng);
        if (!mapped.in_domain(r, z)) continue;
        CHECK(std::abs(invariance_defect(xs, mapped, r, z)) < 1e-9);
    }
}

TEST_CASE("weak_power solutions are X1-invariant") {
    for (double q : {1.0, 2.0, -0.5}) {
        std::map<std::string, double> params{{"q", q}, {"sigma", 2.0}, {"A", 1.0}};
        const auto s = instantiate(Family::WeakPower, params);
        const PointGenerator g = x1(q);
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> ur(s.box.r0, s.box.r1), uz(s.box.z0, s.box.z1);
        int n = 0;
        while (n < 50) {
            const double r = ur(rng), z = uz(rng);
            if (!s.in_domain(r, z)) continue;
            ++n;
            CHECK(std::abs(invariance_defect(g, s, r, z)) < 1e-9);
        }
    }
}

TEST_CASE("exceptional map evaluation where C <= 0 raises a domain error") {
    const auto seed = instantiate(Family::WeakPower, {{"q", -0.25}, {"sigma", -1.0}, {"A", -1.0}});
    const auto mapped = exceptional_map(seed, 1.0);
    // C = 1 + rho^2 + 2z vanishes on the circle r^2 + (z+1)^2 = 1 (lambda = 1)
    CHECK_THROWS_AS(mapped.eval(0.3, -1.0 - std::sqrt(1 - 0.09) + 1e-4), domain_error);
}
