#pragma once

// Point-symmetry generators on (r, z, psi)-space, their Lie brackets, and
// the finite group actions that map Grad-Shafranov solutions to solutions.
//
// Conditional generators (the kappa, rotation, and weak vector fields) are
// represented here but expose no solution map: they do not send solutions to
// solutions, they only feed the reduction machinery.

#include <cstdint>
#include <string>

#include "gs/catalog.hpp"
#include "gs/expr.hpp"

namespace gs {

struct PointGenerator {
    Expr xi_r, xi_z, eta; // components in (r, z, psi)
    std::string label;

    /// V applied to a scalar expression: xi_r df/dr + xi_z df/dz + eta df/dpsi.
    Expr apply(const Expr& f) const;
};

namespace generators {
PointGenerator z_translate();                    // d/dz
PointGenerator scale_psi();                      // psi d/dpsi
PointGenerator scale_rz();                       // r d/dr + z d/dz
PointGenerator x1(double q);                     // r d/dr + z d/dz - 2 q psi d/dpsi
PointGenerator x1_prime(double q, double c);     // shifted variant with psi + c
PointGenerator x_second(double c);               // 2rz d/dr + (z^2-r^2) d/dz + z(psi+c) d/dpsi
PointGenerator x2(double c);                     // r d/dr + z d/dz - (2/c) d/dpsi
PointGenerator y_cond_kappa(double kappa);       // kappa d/dr + r d/dz
PointGenerator y_rot();                          // z d/dr - r d/dz
PointGenerator y_weak(double sigma);             // z d/dr - sigma r d/dz
} // namespace generators

/// [V, W]^i = V(W^i) - W(V^i), as closed-form expressions.
PointGenerator commutator(const PointGenerator& V, const PointGenerator& W);

PointGenerator scaled(double factor, const PointGenerator& V);

/// Equality by evaluation at `n` seeded random points of
/// r in [0.5, 2], z in [-1, 1], psi in [0.5, 2], to absolute tolerance.
bool generators_equal(const PointGenerator& V, const PointGenerator& W, int n = 50,
                      double tol = 1e-10, std::uint64_t seed = 2024);

/// Invariance defect eta - xi_r psi_r - xi_z psi_z of a generator on a
/// solution at a point; vanishes when the solution is V-invariant.
double invariance_defect(const PointGenerator& V, const ClosedFormSolution& s, double r, double z);

// ---------------------------------------------------------------------------
// Finite maps (solution -> solution)
// ---------------------------------------------------------------------------

/// Scaling flow of the power family:
///   psi~(r, z) = e^(2 lambda q) psi(e^lambda r, e^lambda z) + c (e^(2 lambda q) - 1).
/// Refuses solutions whose profile pair is not in the power family with this
/// (q, c).
ClosedFormSolution scaling_map(const ClosedFormSolution& s, double lambda, double q, double c);

/// The exceptional-case map (q = -1/4):
///   psi~ = C^(1/2) psi(r/C, (z + lambda (r^2+z^2))/C),
///   C = 1 + lambda^2 (r^2+z^2) + 2 lambda z,
/// with the psi+c conjugation applied for shifted profiles. Evaluation where
/// C <= 0 raises a domain error.
ClosedFormSolution exceptional_map(const ClosedFormSolution& s, double lambda);

/// The exponential-case map: psi~ = psi(r e^lambda, z e^lambda) + 2 lambda / c.
ClosedFormSolution exp_case_map(const ClosedFormSolution& s, double lambda);

} // namespace gs
