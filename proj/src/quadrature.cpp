#include "kinsw/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "kinsw/maxwellian.hpp"

namespace kinsw {

namespace {

// Gauss-Legendre abscissae/weights on [0,1], cached per order.
struct GaussTable {
    std::vector<double> t;
    std::vector<double> w;
};

const GaussTable& gauss_table(int n) {
    static std::map<int, GaussTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    using TablePtr =
        std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>;
    TablePtr tbl(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)),
                 gsl_integration_glfixed_table_free);
    GaussTable out;
    out.t.resize(n);
    out.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double ti = 0.0, wi = 0.0;
        gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &ti, &wi, tbl.get());
        out.t[i] = ti;
        out.w[i] = wi;
    }
    return cache.emplace(n, std::move(out)).first->second;
}

} // namespace

double QuadratureRule::integrate(const std::vector<double>& values) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * values[k];
    return acc;
}

QuadratureRule build_rule(std::vector<double> edges, int nodes_per_panel) {
    if (nodes_per_panel < 1) throw std::invalid_argument("quadrature nodes must be at least 8");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    QuadratureRule rule;
    rule.breakpoints = edges;
    if (edges.size() < 2) return rule;

    const double span = edges.back() - edges.front();
    const double width_floor = 1e-14 * std::max(span, 1e-300);
    const GaussTable& gt = gauss_table(nodes_per_panel);
    const double pi = std::numbers::pi;

    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
        const double lo = edges[j], hi = edges[j + 1];
        const double r = 0.5 * (hi - lo);
        if (2.0 * r <= width_floor) continue; // degenerate panel
        const double mid = 0.5 * (lo + hi);
        for (int k = 0; k < nodes_per_panel; ++k) {
            const double t = gt.t[k];
            rule.nodes.push_back(mid - r * std::cos(pi * t));
            rule.weights.push_back(gt.w[k] * r * pi * std::sin(pi * t));
        }
    }
    return rule;
}

QuadratureRule build_quadrature_primitive(std::span<const PrimitiveState> states, double g,
                                          int nodes_per_panel,
                                          std::span<const double> extra_breakpoints) {
    // Collect candidate edges: support endpoints of all wet states plus the
    // requested branch-switch points. Panels outside every support integrate
    // zero for equilibrium data, but branch points must still split panels,
    // so extras are clipped to the support hull rather than dropped.
    double hull_lo = std::numeric_limits<double>::infinity();
    double hull_hi = -std::numeric_limits<double>::infinity();
    std::vector<double> edges;
    for (const PrimitiveState& s : states) {
        if (!(s.h > 0.0)) continue;
        const auto [lo, hi] = maxwellian_support(g, s.h, s.u);
        edges.push_back(lo);
        edges.push_back(hi);
        hull_lo = std::min(hull_lo, lo);
        hull_hi = std::max(hull_hi, hi);
    }
    if (edges.empty()) return QuadratureRule{}; // all dry
    for (double b : extra_breakpoints)
        if (b > hull_lo && b < hull_hi) edges.push_back(b);
    return build_rule(std::move(edges), nodes_per_panel);
}

QuadratureRule build_quadrature(std::span<const ConservedState> states, const SchemeParams& p,
                                std::span<const double> extra_breakpoints) {
    std::vector<PrimitiveState> prim;
    prim.reserve(states.size());
    for (const ConservedState& s : states) prim.push_back({s.h, velocity(s, p)});
    return build_quadrature_primitive(prim, p.g, p.quad_nodes, extra_breakpoints);
}

} // namespace kinsw
