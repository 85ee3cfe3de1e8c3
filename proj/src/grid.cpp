#include "kinsw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kinsw {

double Grid1D::min_dx() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_cells(); ++i) m = std::min(m, dx(i));
    return m;
}

void Grid1D::validate() const {
    if (z.empty()) throw std::invalid_argument("grid has no cells");
    if (interfaces.size() != z.size() + 1)
        throw std::invalid_argument("grid needs one more interface than cells");
    for (std::size_t i = 0; i + 1 < interfaces.size(); ++i)
        if (!(interfaces[i] < interfaces[i + 1]))
            throw std::invalid_argument("grid interfaces must be strictly increasing");
}

Grid1D Grid1D::uniform(double x0, double x1, std::size_t n, BoundaryPolicy boundary) {
    if (n == 0) throw std::invalid_argument("grid has no cells");
    if (!(x0 < x1)) throw std::invalid_argument("grid interfaces must be strictly increasing");
    Grid1D g;
    g.boundary = boundary;
    g.interfaces.resize(n + 1);
    const double dx = (x1 - x0) / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i)
        g.interfaces[i] = x0 + dx * static_cast<double>(i);
    g.interfaces[n] = x1;
    g.z.assign(n, 0.0);
    return g;
}

GhostCell ghost_cell(std::span<const ConservedState> states, const Grid1D& grid, int side) {
    const std::size_t n = grid.n_cells();
    switch (grid.boundary) {
        case BoundaryPolicy::periodic:
            return side < 0 ? GhostCell{states[n - 1], grid.z[n - 1]}
                            : GhostCell{states[0], grid.z[0]};
        case BoundaryPolicy::reflective: {
            const ConservedState& edge = side < 0 ? states[0] : states[n - 1];
            const double ze = side < 0 ? grid.z[0] : grid.z[n - 1];
            return GhostCell{ConservedState{edge.h, -edge.q}, ze};
        }
        case BoundaryPolicy::outflow:
        default: {
            const ConservedState& edge = side < 0 ? states[0] : states[n - 1];
            const double ze = side < 0 ? grid.z[0] : grid.z[n - 1];
            return GhostCell{edge, ze};
        }
    }
}

double cfl_timestep(std::span<const ConservedState> states, const Grid1D& grid,
                    const SchemeParams& p) {
    if (states.size() != grid.n_cells())
        throw std::invalid_argument("state count does not match grid");
    const GhostCell gl = ghost_cell(states, grid, -1);
    const GhostCell gr = ghost_cell(states, grid, +1);
    double vm = max_wave_speed(states, p);
    vm = std::max(vm, max_wave_speed(std::span<const ConservedState>(&gl.state, 1), p));
    vm = std::max(vm, max_wave_speed(std::span<const ConservedState>(&gr.state, 1), p));
    if (vm == 0.0) return std::numeric_limits<double>::infinity();
    return p.beta * grid.min_dx() / vm;
}

} // namespace kinsw
