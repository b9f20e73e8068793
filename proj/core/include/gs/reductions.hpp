#pragma once

// Symmetry reductions: assemble the reduced ODE for a classified profile
// pair, integrate it, and reconstruct two-dimensional psi fields from the
// invariant-variable solution.

#include <map>
#include <string>

#include "gs/grid.hpp"
#include "gs/ode.hpp"
#include "gs/profiles.hpp"

namespace gs {

enum class ReductionKind {
    X1Similarity, // psi = r^(-2q) w(y), y = r/z:
                  //   w''(y^2+y^4) + w'(2y^3 - 4qy - y) + 4q(q+1)w = a w^(1+2/q) + b w^(1+1/q)
    Exceptional,  // psi = sqrt(r) w(y), y = r/(r^2+z^2):  w'' y^2 - (3/4) w = a/w^7 + b/w^3
    ExpCase,      // psi = -(2/c) log r + w(y), y = r/z:
                  //   w''(y^2+y^4) + w'(-y + 2y^3) + 4/c = a e^(2cw) + b e^(cw)
    CondKappa,    // psi = w(s), s = r^2/2 - kappa z:      w_ss = F(w)
    Rot,          // psi = w(s), s = r^2 + z^2:            4 s w_ss + 2 w_s = G(w)
    WeakPair,     // psi = w(s), s = sigma r^2 + z^2:      4(sigma^2-sigma) w_ss = F(w)
                  //   together with 4 s w_ss + 2 w_s = G(w)
};

std::string to_string(ReductionKind k);

struct ReducedODE {
    ReductionKind kind = ReductionKind::X1Similarity;
    std::map<std::string, double> params; // q, a, b, c, kappa, sigma as applicable
    ProfileSpec F, G;

    /// w'' = rhs(y, w, w').
    double rhs(double y, double w, double wp) const;

    /// For WeakPair: residual of the second equation along a trajectory of
    /// the first, with w_ss eliminated through the first equation:
    ///   s F(w) / (sigma^2 - sigma) + 2 w' - G(w).
    double second_equation_residual(double s, double w, double wp) const;

    /// Invariant variable at a grid point. The y = r/z kinds use |r/z|: the
    /// reduced equation is even in y, so each half-plane carries the mirrored
    /// branch and the z = 0 line is invalid.
    double invariant(double r, double z) const;
    bool invariant_valid(double r, double z) const;

    /// psi(r, z) from the invariant-profile value w at that point.
    double reconstruct_value(double r, double w) const;

    double param(const std::string& key) const;
};

/// Build the reduction for one classification tag. Tags without a reduction
/// (the linear cases, d, none) raise class_mismatch.
ReducedODE reduce(const TagInfo& tag, const ProfileSpec& F, const ProfileSpec& G);
/// Convenience: reduce on the most specific tag of the class.
ReducedODE reduce(const SymmetryClass& cls, const ProfileSpec& F, const ProfileSpec& G);

OdeSolutionTable integrate_reduced(const ReducedODE& ode, double y0, double w0, double wp0,
                                   double y_end, const OdeOptions& opts = {});

/// The similarity branch start w ~ y^(2q+2): begin at y = eps with
/// w = eps^(2q+2), w' = (2q+2) eps^(2q+1) (the f(0) = 1, f'(0) = 0 branch).
OdeSolutionTable integrate_similarity_branch(const ReducedODE& ode, double eps, double y_end,
                                             const OdeOptions& opts = {});

/// Sample psi on a grid through the table; points whose invariant variable
/// leaves the table span are marked invalid. Throws numeric_error when no
/// grid point maps into the span.
GridField reconstruct(const ReducedODE& ode, const OdeSolutionTable& table, const GridSpec& grid);

} // namespace gs
