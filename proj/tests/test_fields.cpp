#include <doctest.h>

#include <cmath>
#include <random>

#include "gs/catalog.hpp"
#include "gs/errors.hpp"
#include "gs/fields.hpp"
#include "support/oracles.hpp"

using namespace gs;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("b_field on hand-checked solutions") {
    {
        // psi = r^4 with I = 0: B = (0, 0, 4 r^2)
        const auto s = instantiate(Family::CylQuartic, {{"a", 4.0}, {"b", 4.0}});
        const auto B = b_field(s, [](double) { return 0.0; }, 1.3, 0.4);
        CHECK(B.B_r == doctest::Approx(0.0));
        CHECK(B.B_phi == doctest::Approx(0.0));
        CHECK(B.B_z == doctest::Approx(4 * 1.3 * 1.3).epsilon(1e-13));
    }
    {
        // psi = -2 log r: B_z = -2/r^2, scaling as r^-2
        const auto s = instantiate(Family::LogCyl, {{"a", 2.0}, {"b", 2.0}});
        const auto B = b_field(s, [](double) { return 0.0; }, 0.8, 0.0);
        CHECK(B.B_r == doctest::Approx(0.0));
        CHECK(B.B_z == doctest::Approx(-2.0 / (0.8 * 0.8)).epsilon(1e-13));
    }
    {
        // constant I: B_phi = I/r
        const auto s = instantiate(Family::TrivialWeak, {});
        const auto B = b_field(s, [](double) { return 3.0; }, 1.5, 0.2);
        CHECK(B.B_phi == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("div B = 0 identically for five catalog solutions") {
    std::vector<ClosedFormSolution> sols;
    sols.push_back(instantiate(Family::CylQuartic, {{"a", 4.0}, {"b", 4.0}}));
    sols.push_back(instantiate(Family::LogCyl, {{"a", 2.0}, {"b", 2.0}}));
    sols.push_back(instantiate(Family::TrivialWeak, {}));
    sols.push_back(instantiate(Family::DShape, {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}}));
    sols.push_back(instantiate(Family::CondParabolic, {{"kappa", 1.0}, {"c", 0.5}}));
    std::mt19937 rng(21);
    for (const auto& s : sols) {
        std::uniform_real_distribution<double> ur(s.box.r0, s.box.r1), uz(s.box.z0, s.box.z1);
        int n = 0;
        while (n < 50) {
            const double r = ur(rng), z = uz(rng);
            if (r <= 0 || !s.in_domain(r, z)) continue;
            ++n;
            const Jet j = s.eval(r, z);
            // (1/r) d(r B_r)/dr + dB_z/dz = (-psi_zr + psi_rz)/r
            const double div = (-j.drz + j.drz) / r;
            CHECK(std::abs(div) < 1e-10);
        }
    }
}

TEST_CASE("p and I maps of the q = -1/4 family") {
    {
        const PIProfiles pi = p_and_i_maps(-1.5, 0.25, 0.0, 0.0);
        // I = 1/(2 psi) at b = 1/4, I0 = 0
        CHECK(pi.current(0.8) == doctest::Approx(1.0 / (2 * 0.8)).epsilon(1e-14));
        CHECK(pi.current(2.0) == doctest::Approx(0.25).epsilon(1e-14));
    }
    {
        // p vanishing at psi0 = 0.4 fixes p0 = (1/16pi) 0.4^-6
        const double p0 = PIProfiles::boundary_p0(-1.5, 0.4);
        CHECK(p0 == doctest::Approx((1.0 / (16 * kPi)) * std::pow(0.4, -6.0)).epsilon(1e-14));
        const PIProfiles pi = p_and_i_maps(-1.5, 0.25, p0, 0.0);
        CHECK(pi.pressure(0.4) == doctest::Approx(0.0).epsilon(1e-12));
    }
    {
        // a = 0: pressure is constant
        const PIProfiles pi = p_and_i_maps(0.0, 0.25, 1.0, 0.0);
        CHECK(pi.pressure(0.5) == doctest::Approx(1.0));
        CHECK(pi.pressure(2.5) == doctest::Approx(1.0));
    }
    {
        // I^2 < 0 raises a domain error (b < 0 overwhelming I0^2)
        const PIProfiles pi = p_and_i_maps(1.5, -0.25, 0.0, 0.1);
        CHECK_THROWS_AS(pi.current(1.0), domain_error);
        CHECK_NOTHROW(pi.current(10.0)); // I^2 = 0.0075 > 0 out there
    }
}

TEST_CASE("dp/dpsi = -F/(4pi) and -I dI/dpsi = G on psi in [0.3, 3]") {
    // p0 = 0 in the FD identity check: a constant offset only feeds the
    // difference roundoff, not the derivative; the step scales with psi
    const double a = -1.5, b = 0.25;
    const PIProfiles pi = p_and_i_maps(a, b, 0.0, 0.0);
    auto F = [&](double psi) { return a * std::pow(psi, -7.0); };
    auto G = [&](double psi) { return b * std::pow(psi, -3.0); };
    for (double psi = 0.3; psi <= 3.0; psi += 0.05) {
        const double h = 1e-3 * psi;
        const double dp = oracle::fd1([&](double x) { return pi.pressure(x); }, psi, h);
        CHECK(oracle::rel_err(dp, -F(psi) / (4 * kPi)) < 1e-8);
        const double dI = oracle::fd1([&](double x) { return pi.current(x); }, psi, h);
        CHECK(oracle::rel_err(-pi.current(psi) * dI, G(psi)) < 1e-8);
    }
}

TEST_CASE("trace_contour: unit circle from psi = r^2 + z^2") {
    const int n = 101;
    GridField f({-1.5, 1.5, -1.5, 1.5, n, n});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double r = f.spec.r_at(i), z = f.spec.z_at(j);
            f.set(i, j, r * r + z * z);
        }
    const ContourSet cs = trace_contour(f, 1.0);
    REQUIRE(cs.lines.size() == 1);
    const Polyline& pl = cs.lines[0];
    CHECK(pl.closed);
    CHECK(pl.points.size() >= 8);
    CHECK(pl.signed_area() > 0); // counterclockwise
    const double h = f.spec.hr();
    for (const auto& p : pl.points) {
        const double rad = std::hypot(p[0], p[1]);
        CHECK(std::abs(rad - 1.0) <= 2 * h * h);
    }
    // level above the range: empty set
    CHECK(trace_contour(f, 100.0).empty());
}

TEST_CASE("trace_contour: interpolated level accuracy along the polyline") {
    const int n = 81;
    GridField f({0.2, 2.2, -1.0, 1.0, n, n});
    const auto s = instantiate(Family::CondParabolic, {{"kappa", 1.0}, {"c", 0.5}});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double r = f.spec.r_at(i), z = f.spec.z_at(j);
            if (s.in_domain(r, z)) f.set(i, j, s.value(r, z));
        }
    const double level = 1.2;
    const ContourSet cs = trace_contour(f, level);
    REQUIRE_FALSE(cs.empty());
    const double h = f.spec.hr();
    int checked = 0;
    for (const auto& pl : cs.lines)
        for (const auto& p : pl.points) {
            CHECK(std::abs(s.value(p[0], p[1]) - level) <= 2 * h * h * 10);
            ++checked;
        }
    CHECK(checked > 20);
}

TEST_CASE("dshape contour at level -> 0+ approaches the boundary circle") {
    const auto s = instantiate(Family::DShape, {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}});
    const int n = 301;
    const GridSpec g{s.box.r0, s.box.r1, s.box.z0, s.box.z1, n, n};
    const GridField f = sample_for_contours(s, g, -1e6);
    ContourSet cs = trace_contour(f, 0.15);
    REQUIRE_FALSE(cs.empty());
    const AxisResult axis = find_magnetic_axis(s);
    Polyline* hit = nullptr;
    for (auto& pl : cs.lines)
        if (pl.closed && pl.contains(axis.r, axis.z)) hit = &pl;
    REQUIRE(hit != nullptr);
    project_onto_level(s, 0.15, *hit);
    const auto [right, left] = dshape_boundary(s);
    // the psi = 0.15 surface hugs the boundary: the outer right-circle arc
    // plus the left-circle arc that forms the flat inner edge of the D
    std::size_t on_circle = 0, on_right = 0;
    for (const auto& p : hit->points) {
        const double dr = std::hypot(p[0] - right.cr, p[1] - right.cz);
        const double dl = std::hypot(p[0] - left.cr, p[1] - left.cz);
        if (std::abs(dr - right.radius) < 0.02) ++on_right;
        if (std::abs(dr - right.radius) < 0.02 || std::abs(dl - left.radius) < 0.02) ++on_circle;
    }
    CHECK(hit->points.size() > 50);
    CHECK(on_circle > hit->points.size() * 95 / 100);
    CHECK(on_right > hit->points.size() / 2);
}

TEST_CASE("magnetic axis of the D-shaped configuration") {
    const auto s = instantiate(Family::DShape, {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}});
    const AxisResult axis = find_magnetic_axis(s);
    // hand values: (sqrt(3)/2, -1/2), psi_max = 2^(-1/4)
    CHECK(axis.r == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-8));
    CHECK(axis.z == doctest::Approx(-0.5).epsilon(1e-8));
    CHECK(axis.psi == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-10));
}

TEST_CASE("safety factor: large-aspect-ratio circular field gives q -> I/(2 R0) = 1") {
    // psi = 20 - (r - 10)^2 - z^2 (dome; axis at (10, 0)), I = 20:
    // thin surfaces have q = I/(2 R0) = 1
    ClosedFormSolution s;
    s.family = Family::TrivialWeak;
    s.F = ProfileSpec::zero();
    s.G = ProfileSpec::affine(-2, 0);
    s.domain = [](double r, double) { return r > 0; };
    s.evaluator = [](double r, double z) {
        const Jet R = Jet::var_r(r), Z = Jet::var_z(z);
        return 20.0 - (R - 10.0) * (R - 10.0) - Z * Z;
    };
    s.box = {9.75, 10.25, -0.25, 0.25};
    s.form = "circular test field";

    SafetyFactorOptions opts;
    opts.initial_grid = 129;
    const std::vector<double> levels = {20 - 0.15 * 0.15, 20 - 0.12 * 0.12, 20 - 0.09 * 0.09};
    const auto rows = safety_factor(s, [](double) { return 20.0; }, levels, opts);
    for (const auto& row : rows) {
        CHECK(std::abs(row.q_line - 1.0) < 0.01);
        CHECK(std::abs(row.q_flux - row.q_line) / row.q_line < 0.02);
    }
}

TEST_CASE("safety factor of the D-shaped configuration: monotone, cross-checked") {
    const auto s = instantiate(Family::DShape, {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}});
    const PIProfiles pi = p_and_i_maps(-1.5, 0.25, PIProfiles::boundary_p0(-1.5, 0.4), 0.0);
    std::vector<double> levels;
    for (int k = 0; k < 8; ++k) levels.push_back(0.45 + k * 0.05); // 0.45 .. 0.80
    SafetyFactorOptions opts;
    opts.initial_grid = 129;
    opts.max_grid = 513;
    const auto rows = safety_factor(s, [&](double psi) { return pi.current(psi); }, levels, opts);
    REQUIRE(rows.size() == 8);
    // q increases monotonically outward (psi decreasing)
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) CHECK(rows[k].q_line > rows[k + 1].q_line);
    // the two definitions agree within 2%
    for (const auto& row : rows)
        CHECK(std::abs(row.q_flux - row.q_line) / row.q_line < 0.02);
    // frozen pilot values (ray-traced independent contour integration)
    for (const auto& row : rows) {
        if (std::abs(row.psi - 0.45) < 1e-9) CHECK(row.q_line == doctest::Approx(0.832).epsilon(0.02));
        if (std::abs(row.psi - 0.70) < 1e-9) CHECK(row.q_line == doctest::Approx(0.575).epsilon(0.02));
    }
}

TEST_CASE("safety factor error paths") {
    const auto s = instantiate(Family::DShape, {{"lambda", 1.0}, {"A", -1.0}, {"sigma", -1.0}});
    const PIProfiles pi = p_and_i_maps(-1.5, 0.25, 0.0, 0.0);
    // a level above psi_max cannot close a contour
    CHECK_THROWS_AS(
        safety_factor(s, [&](double psi) { return pi.current(psi); }, {0.95}),
        numeric_error);
}
