#pragma once

#include <vector>

#include "kinsw/core.hpp"

namespace kinsw {

enum class BoundaryPolicy { periodic, reflective, outflow };

// 1D finite-volume mesh: n cells bounded by n+1 strictly increasing interface
// abscissae, with one bottom elevation z_i per cell.
struct Grid1D {
    std::vector<double> interfaces; // x_{i+1/2}, size n+1
    std::vector<double> z;          // bottom elevation per cell, size n
    BoundaryPolicy boundary = BoundaryPolicy::outflow;

    std::size_t n_cells() const { return z.size(); }
    double dx(std::size_t i) const { return interfaces[i + 1] - interfaces[i]; }
    double center(std::size_t i) const { return 0.5 * (interfaces[i] + interfaces[i + 1]); }
    double min_dx() const;

    void validate() const;

    // Uniform mesh over [x0, x1] with flat zero topography.
    static Grid1D uniform(double x0, double x1, std::size_t n,
                          BoundaryPolicy boundary = BoundaryPolicy::outflow);
};

// Ghost cell state and elevation implied by the boundary policy.
// side = -1 for the ghost left of cell 0, +1 for the ghost right of cell n-1.
struct GhostCell {
    ConservedState state;
    double z;
};
GhostCell ghost_cell(std::span<const ConservedState> states, const Grid1D& grid, int side);

// Largest stable time step dt = beta * min_i dx_i / v_m, where v_m is the
// maximal transport speed over the states including both ghost cells.
// Returns +infinity when everything is at rest and dry (no transport).
double cfl_timestep(std::span<const ConservedState> states, const Grid1D& grid,
                    const SchemeParams& p);

} // namespace kinsw
