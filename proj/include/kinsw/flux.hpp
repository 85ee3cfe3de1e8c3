#pragma once

#include "kinsw/core.hpp"
#include "kinsw/maxwellian.hpp"
#include "kinsw/quadrature.hpp"

namespace kinsw {

// Interface flux for the homogeneous system: mass and momentum components.
struct FluxPair {
    double mass = 0.0;
    double momentum = 0.0;
};

// Upwind kinetic flux between two states given as (h, u) pairs:
//   F = int_{xi>0} xi (1, xi) M_left + int_{xi<0} xi (1, xi) M_right.
// Evaluated with closed-form half-line moments. Identical inputs take the
// consistency shortcut F = (h u, h u^2 + g h^2 / 2) so that still-water flux
// differences cancel exactly.
FluxPair kinetic_flux(const PrimitiveState& left, const PrimitiveState& right, double g);

// Same flux by panel quadrature. Slow; serves as the independent reference
// implementation for tests and is never called by the solver.
FluxPair kinetic_flux_quadrature(const PrimitiveState& left, const PrimitiveState& right,
                                 double g, int nodes_per_panel);

// Upwind numerical entropy flux at an interface with reference elevation
// z_star:
//   Gt = int_{xi<0} xi H(M_right; xi, z_star) + int_{xi>0} xi H(M_left; xi, z_star),
// evaluated with closed-form clipped moments, so it is exact to roundoff.
// With z_star = 0 this is the entropy flux of the homogeneous scheme; the
// elevation only shifts it by g * z_star * (mass flux).
double numerical_entropy_flux(const PrimitiveState& left, const PrimitiveState& right,
                              double z_star, double g);

// Same by panel quadrature; the independent reference for tests. Its accuracy
// degrades when the two supports nearly coincide, which is exactly why the
// audits use the closed form.
double numerical_entropy_flux_quadrature(const PrimitiveState& left,
                                         const PrimitiveState& right, double z_star, double g,
                                         int nodes_per_panel);

} // namespace kinsw
