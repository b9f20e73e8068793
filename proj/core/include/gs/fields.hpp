#pragma once

// Physical outputs: magnetic field components through the flux function,
// pressure and azimuthal-current profiles of the q = -1/4 family, the
// magnetic axis, and the safety factor q(psi).

#include <functional>
#include <vector>

#include "gs/catalog.hpp"
#include "gs/contour.hpp"
#include "gs/grid.hpp"

namespace gs {

struct FieldTriple {
    double B_r = 0, B_phi = 0, B_z = 0;
};

using CurrentProfile = std::function<double(double)>; // I(psi)

/// Field components from r B = grad(psi) x e_phi + I(psi) e_phi:
///   B_r = -psi_z / r,  B_phi = I(psi) / r,  B_z = psi_r / r.
/// r = 0 raises an axis error unless psi_r = psi_z = 0 there.
FieldTriple b_field(const ClosedFormSolution& s, const CurrentProfile& I, double r, double z);

/// Pressure and azimuthal-field profiles of the psi^-7 / psi^-3 family:
///   p(psi) = p0 + (a / 24 pi) psi^-6,   I(psi)^2 = I0^2 + b psi^-2,
/// so that dp/dpsi = -F/(4 pi) and -I dI/dpsi = G hold analytically.
struct PIProfiles {
    double a = 0, b = 0, p0 = 0, I0 = 0;

    double pressure(double psi) const;
    double dp_dpsi(double psi) const;
    double current_squared(double psi) const;
    double current(double psi) const; ///< nonnegative branch; I^2 < 0 raises domain_error

    /// p0 that makes the pressure vanish at the plasma boundary psi0.
    static double boundary_p0(double a, double psi0);
};

PIProfiles p_and_i_maps(double a, double b, double p0, double I0);

struct AxisResult {
    double r = 0, z = 0, psi = 0;
};

/// Interior maximum of psi: coarse pattern scan over the sample box refined
/// by a damped Newton step on the exact-jet gradient.
AxisResult find_magnetic_axis(const ClosedFormSolution& s);

struct SafetyFactorRow {
    double psi = 0;
    double q_line = 0; ///< (1/2pi) closed-line integral of I / (r |grad psi|)
    double q_flux = 0; ///< |d Phi_tor / d psi| / (2 pi), toroidal flux by area quadrature
};

struct SafetyFactorOptions {
    int initial_grid = 129;
    int max_grid = 1025;
    double refine_rel = 0.005;   ///< polyline refinement stops when q moves less than this
    double flux_delta_frac = 0.02; ///< half-width of the flux derivative stencil,
                                   ///< as a fraction of the level span
};

/// q(psi) over the given levels. Open contours and stagnation points on a
/// contour raise numeric_error naming the level.
std::vector<SafetyFactorRow> safety_factor(const ClosedFormSolution& s, const CurrentProfile& I,
                                           const std::vector<double>& levels,
                                           const SafetyFactorOptions& opts = {});

/// Sample psi over the grid with out-of-domain nodes set to `fill` (marked
/// valid). A fill far below every level of interest lets contours close
/// through boundary-adjacent cells; vertices are then projected back onto
/// the exact level.
GridField sample_for_contours(const ClosedFormSolution& s, const GridSpec& grid, double fill);

/// Newton projection of polyline vertices onto psi = level along the
/// exact-jet gradient.
void project_onto_level(const ClosedFormSolution& s, double level, Polyline& pl);

/// Toroidal flux through the region psi > level: integral of I(psi)/r over
/// the in-domain area, by marching-squares polygon clipping per cell.
double toroidal_flux(const ClosedFormSolution& s, const CurrentProfile& I, double level,
                     const GridSpec& grid);

} // namespace gs
