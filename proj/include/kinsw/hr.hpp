#pragma once

#include <utility>
#include <vector>

#include "kinsw/flux.hpp"
#include "kinsw/grid.hpp"

namespace kinsw {

// Hydrostatic reconstruction at one interface. The reference elevation is
// z_star = max(z_left, z_right); each side keeps its cell velocity and gets
// the positive-part height
//   h_minus = (h_left + z_left - z_star)_+,  h_plus = (h_right + z_right - z_star)_+.
// The side whose elevation equals z_star keeps its height bitwise, which is
// what makes still water an exact fixed point of the scheme.
struct InterfaceReconstruction {
    double z_star = 0.0;
    double dz = 0.0;           // z_right - z_left
    PrimitiveState minus;      // (h_minus, u_left)
    PrimitiveState plus;       // (h_plus, u_right)

    ConservedState state_minus() const { return {minus.h, minus.h * minus.u}; }
    ConservedState state_plus() const { return {plus.h, plus.h * plus.u}; }
};

InterfaceReconstruction reconstruct(const ConservedState& left, const ConservedState& right,
                                    double z_left, double z_right, const SchemeParams& p);

// One-sided interface fluxes: the shared kinetic flux of the reconstructed
// pair plus the hydrostatic pressure correction for each adjacent cell,
//   F_left  = F + (0, g h_left^2  / 2 - g h_minus^2 / 2),
//   F_right = F + (0, g h_right^2 / 2 - g h_plus^2  / 2).
// Mass components are identical by construction.
std::pair<FluxPair, FluxPair> hr_interface_fluxes(const InterfaceReconstruction& rec,
                                                  const ConservedState& left,
                                                  const ConservedState& right, double g);

// Everything the entropy auditor needs about one interface of a step.
struct InterfaceData {
    InterfaceReconstruction rec;
    FluxPair flux;          // kinetic flux of the reconstructed pair
    double p_minus = 0.0;   // flux.momentum - g h_minus^2 / 2
    double p_plus = 0.0;    // flux.momentum - g h_plus^2 / 2
};

struct StepReport {
    double dt = 0.0;
    double v_max = 0.0;                    // transport bound used in the CFL check
    std::vector<double> sigma;             // dt / dx_i per cell
    std::vector<InterfaceData> interfaces; // size n_cells + 1
    GhostCell ghost_left, ghost_right;
    double min_h_updated = 0.0;            // smallest updated height before dry fixes
};

struct StepResult {
    std::vector<ConservedState> states;
    StepReport report;
};

// One explicit finite-volume step
//   U_i^{n+1} = U_i - sigma_i (F_{i+1/2,left} - F_{i-1/2,right}).
// The momentum update uses the algebraically identical telescoped form
//   q_i^{n+1} = q_i - sigma_i (p_minus(i+1/2) - p_plus(i-1/2))
// in which the g h_i^2/2 terms have been cancelled symbolically, so a lake at
// rest reproduces itself bit for bit. Throws "CFL violated" (and touches
// nothing) if sigma_i * v_max exceeds the CFL fraction for any cell.
StepResult step(std::span<const ConservedState> states, const Grid1D& grid, double dt,
                const SchemeParams& p);

} // namespace kinsw
