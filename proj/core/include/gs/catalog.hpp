#pragma once

// The catalog of closed-form Grad-Shafranov solutions: every family is
// instantiated with its parameter constraint solved (or checked), an explicit
// validity-domain predicate, an exact-jet evaluator, and the profile pair
// (F, G) it solves.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gs/jet.hpp"
#include "gs/profiles.hpp"

namespace gs {

enum class Family {
    CylQuartic,       // psi = A^2 r^4,           8A^2 = a + bA
    SqrtR,            // psi = A sqrt(r),         3A^8 + 4a + 4bA^4 = 0
    LogCyl,           // psi = -2 log r,          a + b = 4
    CondParabolic,    // psi = (r^2 - 2 kappa z + c)^(1/2), F = -psi^-3
    CondExp,          // psi = log(8 c^2 cosech^2(c r^2 - 2 c kappa z + c0)), F = e^psi
    RotPower,         // psi = A (r^2+z^2)^gamma, F = 0, G = b psi^beta
    WeakPower,        // psi = (A (sigma r^2 + z^2))^(-q)
    TrivialWeak,      // psi = sigma r^2 + z^2,   F = 0, G = 2
    WeakQuad,         // psi = +/- (alpha^2/16) s^2
    WeakCubic,        // psi = +/- (alpha^3/(192 sqrt 3)) s^3
    DShape,           // quartic-root D-shaped family, sigma < 0, A < 0
    DShapeComplement, // the complementary-region family, A > 0

    // linear-case constructions (not instantiable through `instantiate`)
    LinearSeparable,
    LinearParticular,
    Superposition,
};

std::string to_string(Family f);
Family family_from_string(const std::string& name);
/// The twelve closed-form catalog families (excludes the linear-case
/// constructions).
std::vector<Family> all_families();

struct SampleBox {
    double r0 = 0.1, r1 = 2, z0 = -1.5, z1 = 1.5;
};

struct ClosedFormSolution {
    Family family = Family::CylQuartic;
    std::map<std::string, double> params;
    std::function<bool(double, double)> domain;
    std::function<Jet(double, double)> evaluator;
    ProfileSpec F, G;
    SampleBox box;           ///< natural region for random in-domain sampling
    std::string form;        ///< printable formula
    std::string derivation;  ///< provenance for mapped / superposed solutions

    Jet eval(double r, double z) const;
    double value(double r, double z) const { return eval(r, z).v; }
    bool in_domain(double r, double z) const { return domain(r, z); }
    double param(const std::string& key) const;
    bool has_param(const std::string& key) const { return params.count(key) != 0; }
};

/// Build a catalog solution. Family constraints are solved when the free
/// parameter is omitted and checked when it is supplied; violations raise
/// numeric_error (constraint) or std::invalid_argument (parameter range).
ClosedFormSolution instantiate(Family family, const std::map<std::string, double>& params);

/// All real roots of the cylindrical-solution constraints, by bisection on
/// sign changes over [-1e6, 1e6].
std::vector<double> cyl_quartic_amplitudes(double a, double b); // 8A^2 = a + bA
std::vector<double> sqrt_r_amplitudes(double a, double b);      // 3A^8 + 4a + 4bA^4 = 0

/// The sigma -> 1 - sigma partner carrying the same (F, G). Only the
/// sigma-parameterized weak families admit it.
ClosedFormSolution doubling_partner(const ClosedFormSolution& s);

struct Circle {
    double cr = 0, cz = 0, radius = 0;
};

/// Boundary circles of a D-shaped solution: centers (+-sqrt(|sigma|)/(2 lambda),
/// -1/(2 lambda)) and radius sqrt(1+|sigma|)/(2 lambda); the z-shift flag moves
/// the centers to z = 0.
std::pair<Circle, Circle> dshape_boundary(const ClosedFormSolution& s);

} // namespace gs
