#pragma once

// Marching-squares contour extraction with sub-cell linear interpolation.
// Cells touching invalid grid points are skipped; closed polylines are
// oriented counterclockwise.

#include <array>
#include <vector>

#include "gs/grid.hpp"

namespace gs {

struct Polyline {
    std::vector<std::array<double, 2>> points; // (r, z)
    bool closed = false;

    double signed_area() const;
    bool contains(double r, double z) const; // even-odd rule, closed polylines
};

struct ContourSet {
    double level = 0;
    std::vector<Polyline> lines;

    bool empty() const { return lines.empty(); }
};

ContourSet trace_contour(const GridField& f, double level);

} // namespace gs
