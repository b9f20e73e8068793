#include <doctest.h>

#include <cmath>
#include <random>

#include "gs/errors.hpp"
#include "gs/expr.hpp"
#include "gs/profiles.hpp"

using namespace gs;

TEST_CASE("parser: canonical forms from the documented grammar") {
    {
        const ProfileSpec s = parse_profile("psi^3");
        const auto* p = s.as_power();
        REQUIRE(p != nullptr);
        CHECK(p->a == 1.0);
        CHECK(p->c == 0.0);
        CHECK(p->p == 3.0);
    }
    {
        const ProfileSpec s = parse_profile("2*(psi+1)^-7");
        const auto* p = s.as_power();
        REQUIRE(p != nullptr);
        CHECK(p->a == 2.0);
        CHECK(p->c == 1.0);
        CHECK(p->p == -7.0);
    }
    {
        const ProfileSpec s = parse_profile("3 + 0.5*psi");
        const auto* a = s.as_affine();
        REQUIRE(a != nullptr);
        CHECK(a->k0 == 3.0);
        CHECK(a->k1 == 0.5);
    }
    {
        const ProfileSpec s = parse_profile("0");
        CHECK(s.is_zero());
    }
    {
        const ProfileSpec s = parse_profile("-exp(2*psi)");
        const auto* e = s.as_exponential();
        REQUIRE(e != nullptr);
        CHECK(e->a == -1.0);
        CHECK(e->c == 2.0);
    }
    {
        // stays opaque but evaluable
        const ProfileSpec s = parse_profile("log(psi) + psi^2");
        CHECK(s.as_power() == nullptr);
        CHECK(s.as_affine() == nullptr);
        CHECK(s(2.0) == doctest::Approx(std::log(2.0) + 4.0));
    }
}

TEST_CASE("parser: errors carry positions") {
    try {
        parse_profile("2*(psi+");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.position() == 7);
    }
    try {
        parse_profile("2*phi");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("round trip: parse -> print -> parse is stable") {
    const char* inputs[] = {"psi^3", "2*(psi+1)^-7", "3 + 0.5*psi", "0", "-psi^-3",
                            "1.5*exp(-0.25*psi)", "psi/4 - 2", "(psi-0.5)^2.5",
                            "log(psi) + psi^2/3", "exp(psi)*psi"};
    for (const char* text : inputs) {
        const ProfileSpec s1 = parse_profile(text);
        const ProfileSpec s2 = parse_profile(s1.print());
        CHECK(s1.form.index() == s2.form.index());
        CHECK(s1.print() == s2.print());
        // evaluation agrees where defined
        for (double psi : {0.3, 0.9, 1.7, 2.4}) {
            double v1, v2;
            try {
                v1 = s1(psi);
                v2 = s2(psi);
            } catch (const domain_error&) {
                continue;
            }
            CHECK(v1 == doctest::Approx(v2).epsilon(1e-15));
        }
    }
}

TEST_CASE("canonical form and raw AST agree to 4 ulps") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> upsi(0.05, 3.0);
    const char* inputs[] = {"psi^3", "2*(psi+1)^-7", "3 + 0.5*psi", "1.5*exp(-0.25*psi)",
                            "-psi^-3", "7"};
    for (const char* text : inputs) {
        const ProfileSpec s = parse_profile(text);
        REQUIRE(s.ast.has_value());
        for (int i = 0; i < 100; ++i) {
            const double psi = upsi(rng);
            const double canon = s(psi);
            const double raw = s.ast->eval_psi(psi);
            CHECK(std::abs(canon - raw) <=
                  4 * std::numeric_limits<double>::epsilon() * std::abs(raw) + 1e-300);
        }
    }
}

TEST_CASE("jet evaluation of parsed field expressions") {
    ParseOptions field_opts{true, true, false};
    {
        const Expr e = parse_expression("(r^2 - z^2)^0.25", field_opts);
        const Jet j = e.eval_jet(Jet::var_r(2.0), Jet::var_z(1.0));
        CHECK(j.v == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-14));
        CHECK(j.dr == doctest::Approx(0.25 * std::pow(3.0, -0.75) * 4.0).epsilon(1e-12));
    }
    {
        const Expr e = parse_expression("7", field_opts);
        const Jet j = e.eval_jet(Jet::var_r(1.0), Jet::var_z(1.0));
        CHECK(j.v == 7.0);
        CHECK(j.dr == 0.0);
        CHECK(j.dz == 0.0);
        CHECK(j.drr == 0.0);
        CHECK(j.drz == 0.0);
        CHECK(j.dzz == 0.0);
    }
}

TEST_CASE("domain errors identify the offending subexpression") {
    const Expr e = parse_expression("psi^2 + log(psi - 2)", ParseOptions{false, false, true});
    try {
        e.eval(0, 0, 1.0); // log(-1)
        FAIL("expected domain_error");
    } catch (const domain_error& err) {
        CHECK(err.node() >= 0);
        CHECK(std::string(err.what()).find("log(psi - 2)") != std::string::npos);
    }
    try {
        e.eval_jet(Jet::var_r(1.0), Jet::var_z(0.0), Jet::constant(1.0));
        FAIL("expected domain_error");
    } catch (const domain_error& err) {
        CHECK(err.node() >= 0);
    }
}

TEST_CASE("canonicalization degradations") {
    // a (psi+c)^0 degrades to the constant a, p = 1 folds into affine
    const ProfileSpec p0 = ProfileSpec::power_shifted(3.0, 2.0, 0.0);
    REQUIRE(p0.as_affine() != nullptr);
    CHECK(p0.as_affine()->k0 == 3.0);
    CHECK(p0.as_affine()->k1 == 0.0);
    const ProfileSpec p1 = ProfileSpec::power_shifted(2.0, 1.5, 1.0);
    REQUIRE(p1.as_affine() != nullptr);
    CHECK(p1.as_affine()->k0 == 3.0);
    CHECK(p1.as_affine()->k1 == 2.0);
    CHECK(ProfileSpec::power_shifted(0.0, 1.0, 2.0).is_zero());
    CHECK(ProfileSpec::exponential(2.0, 0.0).as_affine() != nullptr);
}

TEST_CASE("symbolic differentiation against finite differences") {
    const Expr e = parse_expression("exp(2*psi)*psi^3 - log(psi)/psi", ParseOptions{false, false, true});
    const Expr d = e.diff(ExprVar::Psi);
    for (double psi : {0.4, 1.0, 1.9}) {
        const double h = 1e-6;
        const double fd = (e.eval(0, 0, psi + h) - e.eval(0, 0, psi - h)) / (2 * h);
        CHECK(d.eval(0, 0, psi) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("classification: spec'd pairs") {
    {
        const SymmetryClass c = classify(parse_profile("psi^3"), parse_profile("psi^2"));
        CHECK(c.primary().tag == SymTag::A);
        CHECK(c.primary().params.at("q") == doctest::Approx(1.0));
    }
    {
        const SymmetryClass c = classify(parse_profile("2*(psi+1)^-7"), parse_profile("3*(psi+1)^-3"));
        CHECK(c.primary().tag == SymTag::ASecond);
        CHECK(c.primary().params.at("q") == doctest::Approx(-0.25));
        CHECK(c.primary().params.at("c") == doctest::Approx(1.0));
    }
    {
        // proportional pair: conditional-kappa with kappa = 1 comes first
        const SymmetryClass c = classify(parse_profile("-psi^-3"), parse_profile("-psi^-3"));
        CHECK(c.primary().tag == SymTag::CondKappa);
        CHECK(c.primary().params.at("kappa") == doctest::Approx(1.0));
    }
    {
        const SymmetryClass c = classify(parse_profile("0"), parse_profile("8*psi^3"));
        CHECK(c.primary().tag == SymTag::CondRotation);
        CHECK(c.primary().params.at("beta") == doctest::Approx(3.0));
    }
    {
        // exponential pair
        const SymmetryClass c = classify(parse_profile("2*exp(2*psi)"), parse_profile("2*exp(psi)"));
        CHECK(c.has(SymTag::B));
        CHECK(c.find(SymTag::B)->params.at("c") == doctest::Approx(1.0));
    }
    {
        // linear cases; proportional pairs additionally carry conditional-kappa
        // (G = kappa^2 F holds for any F), which ranks as more specific
        const SymmetryClass cp = classify(parse_profile("psi"), parse_profile("2*psi"));
        CHECK(cp.primary().tag == SymTag::CondKappa);
        CHECK(cp.has(SymTag::CPrime));
        CHECK(classify(parse_profile("psi"), parse_profile("2*psi + 1")).primary().tag == SymTag::CFourth);
        CHECK(classify(parse_profile("2"), parse_profile("-psi")).primary().tag == SymTag::CSecond);
        CHECK(classify(parse_profile("-psi"), parse_profile("1")).primary().tag == SymTag::CThird);
        CHECK(classify(parse_profile("1+psi"), parse_profile("psi")).primary().tag == SymTag::CFourth);
        CHECK(classify(parse_profile("1"), parse_profile("2")).has(SymTag::D));
    }
    {
        // falls through to none
        const SymmetryClass c = classify(parse_profile("log(psi)"), parse_profile("psi^2"));
        CHECK(c.is_none());
    }
}

TEST_CASE("weak_family: pinned coefficient relations") {
    {
        const WeakFamily w = weak_family(-0.25, -1.0, -1.0);
        CHECK(w.a == doctest::Approx(-1.5).epsilon(1e-15));
        CHECK(w.b == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(w.F.as_power()->p == doctest::Approx(-7.0));
        CHECK(w.G.as_power()->p == doctest::Approx(-3.0));
    }
    {
        const WeakFamily w = weak_family(-0.5, 1.0 / std::sqrt(2.0), 2.0);
        CHECK(w.a == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(std::abs(w.b) < 1e-15);
    }
    {
        const WeakFamily w = weak_family(-0.25, -1.0, -5.0);
        CHECK(w.a == doctest::Approx(-22.5).epsilon(1e-14));
        CHECK(w.b == doctest::Approx(0.25).epsilon(1e-15));
    }
    CHECK_THROWS_AS(weak_family(-0.25, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(weak_family(-0.25, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("dshape_params_from: pinned inversions") {
    {
        const DShapeParams d = dshape_params_from(-1.5, 0.25);
        CHECK(d.A == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(d.sigma == doctest::Approx(-1.0).epsilon(1e-15));
    }
    {
        const DShapeParams d = dshape_params_from(-9.0 / 16.0, 0.25);
        CHECK(d.A == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(d.sigma == doctest::Approx(-0.5).epsilon(1e-15));
    }
    {
        const double b = 0.25;
        const DShapeParams d = dshape_params_from(3 * b * b, b);
        CHECK(d.sigma == doctest::Approx(0.5).epsilon(1e-15));
    }
    CHECK_THROWS_AS(dshape_params_from(1.0, 0.25), numeric_error); // a > 3 b^2
    CHECK_THROWS_AS(dshape_params_from(-1.5, 0.0), std::invalid_argument);
}

TEST_CASE("weak_family <-> dshape_params_from round trip, 100 random draws") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uA(-3.0, -0.1), us(-6.0, -0.05);
    for (int i = 0; i < 100; ++i) {
        const double A = uA(rng), sigma = us(rng);
        const WeakFamily w = weak_family(-0.25, A, sigma);
        const DShapeParams d = dshape_params_from(w.a, w.b);
        CHECK(std::abs(d.A - A) <= 1e-12 * std::abs(A));
        CHECK(std::abs(d.sigma - sigma) <= 1e-12 * std::max(1.0, std::abs(sigma)));
    }
}

TEST_CASE("classify recovers the weak family tags") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> uq(0.3, 3.0), uA(0.2, 2.0), us(1.5, 4.0);
    for (int i = 0; i < 20; ++i) {
        const double q = uq(rng), A = uA(rng), sigma = us(rng);
        const WeakFamily w = weak_family(q, A, sigma);
        const SymmetryClass c = classify(w.F, w.G);
        CHECK(c.primary().tag == SymTag::A);
        CHECK(c.primary().params.at("q") == doctest::Approx(q).epsilon(1e-9));
        REQUIRE(c.has(SymTag::WeakSigma));
        const auto& ws = c.find(SymTag::WeakSigma)->params;
        CHECK(ws.at("A") == doctest::Approx(A).epsilon(1e-9));
        // the classifier reports the sigma < 1/2 branch; sigma > 1/2 inputs
        // come back as the doubling partner
        const double expect = sigma < 0.5 ? sigma : 1 - sigma;
        CHECK(ws.at("sigma") == doctest::Approx(expect).epsilon(1e-9));
    }
    // q = -1/4 pairs come back as the exceptional case
    const WeakFamily w = weak_family(-0.25, -1.0, -1.0);
    CHECK(classify(w.F, w.G).primary().tag == SymTag::ASecond);
}
