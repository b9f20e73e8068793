#pragma once

// The project's universal oracle: evaluate the Grad-Shafranov operator
// psi_rr - psi_r/r + psi_zz against r^2 F(psi) + G(psi), either with exact
// jets (closed-form solutions) or second-order finite differences (sampled
// grids).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gs/catalog.hpp"
#include "gs/grid.hpp"
#include "gs/jet.hpp"
#include "gs/profiles.hpp"

namespace gs {

/// LHS of the GS equation from an exact jet; requires r > 0.
double gs_lhs(const Jet& j, double r);

struct SampleSpec {
    int n = 1000;
    std::uint64_t seed = 12345;
    double psi_floor = 1e-3; ///< |psi + c| below this is excluded when a
                             ///< profile carries a negative power
};

struct ResidualReport {
    int n_points = 0;
    double max_abs = 0;
    double rms = 0;
    double scale = 0;    ///< max over points of max(|LHS|, |r^2 F|, |G|, 1)
    double max_rel = 0;  ///< max over points of |residual| / local scale
    int excluded_low_psi = 0;
    std::vector<std::array<double, 2>> failures; ///< points with domain errors

    /// Global relative residual; meaningful only when scale > 0.
    double relative() const { return scale > 0 ? max_abs / scale : 0.0; }
    std::string to_json() const;
};

/// Residual over random in-domain points of the solution's sample box,
/// evaluated with exact jets. Throws numeric_error when no sampled point
/// lands inside the domain.
ResidualReport residual(const ClosedFormSolution& s, const SampleSpec& spec = {});

/// Same report restricted to an explicit list of points.
ResidualReport residual_at(const ClosedFormSolution& s, const std::vector<std::array<double, 2>>& pts,
                           double psi_floor = 1e-3);

/// Second-order central-difference residual over the valid interior of a
/// sampled field. Grid must be at least 5x5.
ResidualReport grid_residual(const GridField& f, const ProfileSpec& F, const ProfileSpec& G);

/// Richardson order estimate from a (h, h/2) grid pair: log2 of the rms
/// residual ratio. Smooth fields land near 2.
double grid_convergence_order(const GridField& coarse, const GridField& fine, const ProfileSpec& F,
                              const ProfileSpec& G);

} // namespace gs
