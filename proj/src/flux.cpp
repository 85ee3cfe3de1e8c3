#include "kinsw/flux.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace kinsw {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

FluxPair kinetic_flux(const PrimitiveState& left, const PrimitiveState& right, double g) {
    if (left.h == right.h && left.u == right.u) {
        // Coincident states: the split integrals recombine to the exact
        // macroscopic flux, so evaluate that directly.
        const double h = left.h, u = left.u;
        if (!(h > 0.0)) return {};
        return {h * u, h * u * u + 0.5 * g * h * h};
    }
    const Moments3 up = maxwellian_moments_clipped(g, left.h, left.u, 0.0, inf);
    const Moments3 dn = maxwellian_moments_clipped(g, right.h, right.u, -inf, 0.0);
    return {up.m1 + dn.m1, up.m2 + dn.m2};
}

FluxPair kinetic_flux_quadrature(const PrimitiveState& left, const PrimitiveState& right,
                                 double g, int nodes_per_panel) {
    const std::array<PrimitiveState, 2> states{left, right};
    const std::array<double, 1> zero{0.0};
    const QuadratureRule rule = build_quadrature_primitive(states, g, nodes_per_panel, zero);
    FluxPair f;
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double xi = rule.nodes[k];
        const PrimitiveState& s = xi > 0.0 ? left : right;
        const double m = maxwellian(g, s.h, s.u, xi);
        f.mass += rule.weights[k] * xi * m;
        f.momentum += rule.weights[k] * xi * xi * m;
    }
    return f;
}

namespace {

// One upwind half of the entropy flux: int over [lo, hi] of xi * H(M; xi, z).
// The integrand splits into xi^3 M / 2, kappa xi M^3 and g z xi M, each with
// a closed-form clipped moment.
double entropy_flux_half(const PrimitiveState& s, double z_star, double g, double lo,
                         double hi) {
    return 0.5 * maxwellian_third_moment_clipped(g, s.h, s.u, lo, hi) +
           entropy_cubic_coeff(g) * maxwellian_cubic_flux_clipped(g, s.h, s.u, lo, hi) +
           g * z_star * maxwellian_moments_clipped(g, s.h, s.u, lo, hi).m1;
}

} // namespace

double numerical_entropy_flux(const PrimitiveState& left, const PrimitiveState& right,
                              double z_star, double g) {
    return entropy_flux_half(left, z_star, g, 0.0, inf) +
           entropy_flux_half(right, z_star, g, -inf, 0.0);
}

double numerical_entropy_flux_quadrature(const PrimitiveState& left,
                                         const PrimitiveState& right, double z_star, double g,
                                         int nodes_per_panel) {
    const std::array<PrimitiveState, 2> states{left, right};
    const std::array<double, 1> zero{0.0};
    const QuadratureRule rule = build_quadrature_primitive(states, g, nodes_per_panel, zero);
    double gt = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double xi = rule.nodes[k];
        const PrimitiveState& s = xi > 0.0 ? left : right;
        const double m = maxwellian(g, s.h, s.u, xi);
        gt += rule.weights[k] * xi * kinetic_entropy(g, m, xi, z_star);
    }
    return gt;
}

} // namespace kinsw
