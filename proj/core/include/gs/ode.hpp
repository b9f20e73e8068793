#pragma once

// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) for the second-order
// scalar ODEs produced by the symmetry reductions, with PI step-size control
// and cubic-Hermite dense output. Integration runs in either direction.

#include <functional>
#include <vector>

#include "gs/errors.hpp"

namespace gs {

struct OdeOptions {
    double tol = 1e-10;         ///< local error tolerance per step (relative part)
    double abs_floor = 1e-14;   ///< absolute error floor in the step-error norm
    double max_step = 0.0;      ///< 0 = no cap
    double initial_step = 0.0;  ///< 0 = heuristic
    double blowup = 1e12;       ///< |w| or |w'| beyond this truncates the run
    int max_steps = 2000000;
    int max_rejections = 100000;
    bool check_dense = true;    ///< re-integrate each step at h/2 and record the
                                ///< midpoint defect of the Hermite interpolant
};

struct OdeMetadata {
    int steps = 0;
    int rejected = 0;
    double tol = 0;
    double max_dense_defect = 0; ///< scaled midpoint defect, should stay O(tol)
    bool truncated_blowup = false;
};

struct OdeSample {
    double y, w, wp;
};

/// Accepted-step trajectory of w'' = f(y, w, w'); samples are strictly
/// monotone in y. Values between knots come from the cubic Hermite built on
/// (w, w') at the knots, which is the natural dense output of the pair.
struct OdeSolutionTable {
    std::vector<OdeSample> samples;
    OdeMetadata meta;

    bool increasing() const { return samples.back().y > samples.front().y; }
    double y_min() const;
    double y_max() const;
    bool covers(double y) const { return y >= y_min() && y <= y_max(); }

    double interp_w(double y) const;
    double interp_wp(double y) const;

private:
    std::size_t locate(double y) const;
};

using Rhs2 = std::function<double(double y, double w, double wp)>;

OdeSolutionTable integrate_second_order(const Rhs2& f, double y0, double w0, double wp0,
                                        double y_end, const OdeOptions& opts = {});

} // namespace gs
