#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kinsw/core.hpp"

namespace kinsw {

// Panel quadrature in the kinetic velocity variable.
//
// The integrands in this code are piecewise smooth with square-root behavior
// at the endpoints of each equilibrium support and kinks where upwind branches
// switch sign. The rule therefore places panel boundaries at all those points
// and maps Gauss-Legendre nodes through xi = mid - r*cos(pi*t), which turns
// half-integer endpoint singularities into analytic integrands and restores
// spectral convergence. All nodes are strictly interior to their panel.
struct QuadratureRule {
    std::vector<double> nodes;       // ascending across panels
    std::vector<double> weights;     // positive
    std::vector<double> breakpoints; // sorted, deduplicated panel edges

    std::size_t size() const { return nodes.size(); }

    double integrate(const std::vector<double>& values) const;

    template <class F>
    double integrate_fn(F&& f) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * f(nodes[k]);
        return acc;
    }
};

// Rule with `nodes_per_panel` mapped Gauss-Legendre nodes on each panel
// [edges[j], edges[j+1]]. Edges are sorted and deduplicated; degenerate
// panels are dropped.
QuadratureRule build_rule(std::vector<double> edges, int nodes_per_panel);

// Rule covering the union of the equilibrium supports of `states`, with panel
// edges at every support endpoint and at the given extra breakpoints (branch
// switch locations, usually {0}). Dry states contribute nothing. The total
// node count is at least p.quad_nodes whenever any state is wet.
QuadratureRule build_quadrature(std::span<const ConservedState> states,
                                const SchemeParams& p,
                                std::span<const double> extra_breakpoints = {});

// Same, for states already split into height/velocity pairs.
struct PrimitiveState {
    double h = 0.0;
    double u = 0.0;
};
QuadratureRule build_quadrature_primitive(std::span<const PrimitiveState> states, double g,
                                          int nodes_per_panel,
                                          std::span<const double> extra_breakpoints = {});

} // namespace kinsw
