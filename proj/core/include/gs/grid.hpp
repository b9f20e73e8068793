#pragma once

// Uniform (r, z) grids with per-point validity, shared by reconstruction,
// finite-difference residuals, contour tracing, and the CLI emitters.

#include <cstdint>
#include <vector>

namespace gs {

struct GridSpec {
    double r0 = 0, r1 = 1, z0 = 0, z1 = 1;
    int nr = 2, nz = 2;

    double hr() const { return (r1 - r0) / (nr - 1); }
    double hz() const { return (z1 - z0) / (nz - 1); }
    double r_at(int i) const { return r0 + i * hr(); }
    double z_at(int j) const { return z0 + j * hz(); }
};

struct GridField {
    GridSpec spec;
    std::vector<double> psi;     // row-major: index j*nr + i
    std::vector<std::uint8_t> valid;

    explicit GridField(const GridSpec& g = {})
        : spec(g),
          psi(static_cast<std::size_t>(g.nr) * g.nz, 0.0),
          valid(static_cast<std::size_t>(g.nr) * g.nz, 0) {}

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * spec.nr + i; }
    double at(int i, int j) const { return psi[idx(i, j)]; }
    double& at(int i, int j) { return psi[idx(i, j)]; }
    bool is_valid(int i, int j) const { return valid[idx(i, j)] != 0; }
    void set(int i, int j, double v, bool ok = true) {
        psi[idx(i, j)] = v;
        valid[idx(i, j)] = ok ? 1 : 0;
    }
};

} // namespace gs
