#include "kinsw/kinetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "kinsw/maxwellian.hpp"

namespace kinsw {

double delta_maxwellian(double g, double h_cell, double u_cell, double h_rec, double xi) {
    const double m_cell = maxwellian(g, h_cell, u_cell, xi);
    const double m_rec = maxwellian(g, h_rec, u_cell, xi);
    return (xi - u_cell) * (m_cell - m_rec);
}

KineticUpdate kinetic_update(const CellNeighborhood& c, double sigma, const SchemeParams& p) {
    p.validate();
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("sigma must be finite and nonnegative");

    KineticUpdate upd;
    upd.g = p.g;
    upd.sigma = sigma;
    upd.h_center = std::max(c.center.h, 0.0);
    upd.u_center = velocity(c.center, p);
    upd.z_center = c.z_center;
    upd.rec_left = reconstruct(c.left, c.center, c.z_left, c.z_center, p);
    upd.rec_right = reconstruct(c.center, c.right, c.z_center, c.z_right, p);

    const std::array<ConservedState, 3> tri{c.left, c.center, c.right};
    upd.v_max = max_wave_speed(tri, p);
    if (sigma * upd.v_max > p.beta * (1.0 + 1e-12)) throw std::runtime_error("CFL violated");

    // One shared rule resolving all five supports and the upwind switch.
    const std::array<PrimitiveState, 5> supports{
        PrimitiveState{upd.h_center, upd.u_center},
        upd.rec_right.minus, upd.rec_right.plus,
        upd.rec_left.minus, upd.rec_left.plus,
    };
    const std::array<double, 1> zero{0.0};
    upd.rule = build_quadrature_primitive(supports, p.g, p.quad_nodes, zero);

    const std::size_t n = upd.rule.size();
    upd.m_center.resize(n);
    upd.m_right_minus.resize(n);
    upd.m_right_plus.resize(n);
    upd.m_left_minus.resize(n);
    upd.m_left_plus.resize(n);
    upd.dm_right.resize(n);
    upd.dm_left.resize(n);
    upd.f.resize(n);

    const double ui = upd.u_center;
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = upd.rule.nodes[k];
        const double mc = maxwellian(p.g, upd.h_center, ui, xi);
        const double mrm = maxwellian(p.g, upd.rec_right.minus.h, upd.rec_right.minus.u, xi);
        const double mrp = maxwellian(p.g, upd.rec_right.plus.h, upd.rec_right.plus.u, xi);
        const double mlm = maxwellian(p.g, upd.rec_left.minus.h, upd.rec_left.minus.u, xi);
        const double mlp = maxwellian(p.g, upd.rec_left.plus.h, upd.rec_left.plus.u, xi);
        upd.m_center[k] = mc;
        upd.m_right_minus[k] = mrm;
        upd.m_right_plus[k] = mrp;
        upd.m_left_minus[k] = mlm;
        upd.m_left_plus[k] = mlp;
        upd.dm_right[k] = (xi - ui) * (mc - mrm);
        upd.dm_left[k] = (xi - ui) * (mc - mlp);
        if (xi <= 0.0) {
            upd.f[k] = mc - sigma * (xi * (mrp - mrm) + ui * (mrm - mlp));
        } else {
            upd.f[k] = mc - sigma * (xi * (mlp - mlm) + ui * (mrm - mlp));
        }
    }
    return upd;
}

double positivity_margin(const KineticUpdate& upd) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : upd.f) m = std::min(m, v);
    return upd.f.empty() ? 0.0 : m;
}

ConservedState update_moments(const KineticUpdate& upd) {
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t k = 0; k < upd.rule.size(); ++k) {
        m0 += upd.rule.weights[k] * upd.f[k];
        m1 += upd.rule.weights[k] * upd.rule.nodes[k] * upd.f[k];
    }
    return {m0, m1};
}

double consistency_probe(const ConservedState& u_cell, double dz_left, double dz_right,
                         double dx, const SchemeParams& p, double edge_margin) {
    p.validate();
    if (!(u_cell.h > p.h_dry)) throw std::invalid_argument("consistency probe needs a wet cell");
    if (!(dx > 0.0)) throw std::invalid_argument("cell width must be positive");

    const double g = p.g;
    const double h = u_cell.h;
    const double u = velocity(u_cell, p);
    const double a = std::sqrt(2.0 * g * h);

    // Reconstructed heights on the cell side of each interface when the
    // neighbor carries the elevation increment.
    const double gap_right = std::max(dz_right, 0.0);
    const double gap_left = std::max(-dz_left, 0.0);
    const double h_rec_right = std::max(h - gap_right, 0.0);
    const double h_rec_left = std::max(h - gap_left, 0.0);

    const std::array<PrimitiveState, 3> supports{
        PrimitiveState{h, u}, PrimitiveState{h_rec_right, u}, PrimitiveState{h_rec_left, u}};
    const QuadratureRule rule = build_quadrature_primitive(supports, g, p.quad_nodes);

    // Kinks sit at the support edges of every participating Maxwellian; the
    // probe only samples nodes at least edge_margin * a away from all of them.
    std::vector<double> kinks{u - a, u + a};
    for (double hr : {h_rec_right, h_rec_left}) {
        if (hr > 0.0) {
            const double ar = std::sqrt(2.0 * g * hr);
            kinks.push_back(u - ar);
            kinks.push_back(u + ar);
        }
    }

    double worst = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double xi = rule.nodes[k];
        const double s = xi - u;
        if (std::abs(s) >= a) continue;
        bool near_kink = false;
        for (double e : kinks)
            if (std::abs(xi - e) <= edge_margin * a) near_kink = true;
        if (near_kink) continue;

        const double m = maxwellian(g, h, u, xi);
        const double denom = 2.0 * g * h - s * s;
        for (const auto& [gap, h_rec] :
             {std::pair{gap_right, h_rec_right}, std::pair{gap_left, h_rec_left}}) {
            const double dm = delta_maxwellian(g, h, u, h_rec, xi);
            const double reference = g * (gap / dx) * s * m / denom;
            worst = std::max(worst, std::abs(dm / dx - reference));
        }
    }
    return worst;
}

} // namespace kinsw
