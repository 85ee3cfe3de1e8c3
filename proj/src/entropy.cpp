#include "kinsw/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "kinsw/maxwellian.hpp"

namespace kinsw {

namespace {

// Transported densities may carry sub-roundoff negative values; the entropy
// of such a density is evaluated at zero. Positivity itself is audited
// separately, so nothing is masked here.
double entropy_of_density(double g, double f, double xi, double z) {
    return kinetic_entropy(g, f > 0.0 ? f : 0.0, xi, z);
}

// Bregman gap of the kinetic entropy between two equilibrium values at the
// same abscissa; the linear-in-f parts cancel, leaving the cubic term
//   H(p) - H(q) - H'(q)(p - q) = kappa (p + 2q) (p - q)^2.
double entropy_bregman(double g, double p, double q) {
    const double d = p - q;
    return entropy_cubic_coeff(g) * (p + 2.0 * q) * d * d;
}

struct NeighborhoodScale {
    double h_max = 0.0;
    double z_max = 0.0;
    double pointwise = 0.0; // kinetic entropy magnitude
    double flux = 0.0;      // entropy flux magnitude (adds one velocity power)
};

NeighborhoodScale audit_scale(const KineticUpdate& upd) {
    NeighborhoodScale s;
    s.h_max = std::max({upd.h_center, upd.rec_right.minus.h, upd.rec_right.plus.h,
                        upd.rec_left.minus.h, upd.rec_left.plus.h});
    s.z_max = std::max({std::abs(upd.z_center), std::abs(upd.rec_left.z_star),
                        std::abs(upd.rec_right.z_star)});
    s.pointwise = kinetic_entropy_scale(upd.g, s.h_max, upd.v_max, s.z_max);
    s.flux = s.pointwise * (1.0 + upd.v_max);
    return s;
}

// Per-node upwind entropy flux terms of the update, cell side, for both
// interfaces. Each consists of the upwind interface flux at the interface
// elevation, a shift between the interface and cell elevations, and a linear
// correction whose integral vanishes.
struct EntropyFluxTerms {
    std::vector<double> right; // interface i+1/2, as seen from the cell
    std::vector<double> left;  // interface i-1/2, as seen from the cell
};

EntropyFluxTerms entropy_flux_terms(const KineticUpdate& upd) {
    const double g = upd.g;
    const auto [eh, eq] = entropy_gradient(g, upd.h_center, upd.u_center);
    const double zc = upd.z_center;
    const double zr = upd.rec_right.z_star;
    const double zl = upd.rec_left.z_star;

    EntropyFluxTerms t;
    const std::size_t n = upd.rule.size();
    t.right.resize(n);
    t.left.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = upd.rule.nodes[k];
        const double mc = upd.m_center[k];
        const double grad = eh + eq * xi + g * zc; // entropy gradient paired with (1, xi)
        const double h_center_value = kinetic_entropy(g, mc, xi, zc);

        {
            const double mm = upd.m_right_minus[k];
            const double mp = upd.m_right_plus[k];
            const double upwind = xi <= 0.0 ? kinetic_entropy(g, mp, xi, zr)
                                            : kinetic_entropy(g, mm, xi, zr);
            t.right[k] = xi * upwind + xi * (h_center_value - kinetic_entropy(g, mm, xi, zr)) +
                         grad * (xi * (mm - mc) + upd.dm_right[k]);
        }
        {
            const double mm = upd.m_left_minus[k];
            const double mp = upd.m_left_plus[k];
            const double upwind = xi <= 0.0 ? kinetic_entropy(g, mp, xi, zl)
                                            : kinetic_entropy(g, mm, xi, zl);
            t.left[k] = xi * upwind + xi * (h_center_value - kinetic_entropy(g, mp, xi, zl)) +
                        grad * (xi * (mp - mc) + upd.dm_left[k]);
        }
    }
    return t;
}

// Transport term T with f = M_i - sigma T, branchwise in xi.
double transport_term(const KineticUpdate& upd, std::size_t k) {
    const double xi = upd.rule.nodes[k];
    const double ui = upd.u_center;
    if (xi <= 0.0)
        return xi * (upd.m_right_plus[k] - upd.m_right_minus[k]) +
               ui * (upd.m_right_minus[k] - upd.m_left_plus[k]);
    return xi * (upd.m_left_plus[k] - upd.m_left_minus[k]) +
           ui * (upd.m_right_minus[k] - upd.m_left_plus[k]);
}

} // namespace

double alpha_limit(double beta) { return 2.0 / (beta * (3.0 - beta)) - 1.0; }

double dissipation_floor(double alpha, double beta) {
    const double w = 1.0 + alpha;
    return std::min(1.0 - w * beta * beta, 2.0 + w * beta * beta - 3.0 * w * beta);
}

double dissipation_before_absorption(double alpha, double beta, double eps) {
    return dissipation_floor(alpha, beta) - 2.0 * eps * (1.0 + alpha) * beta;
}

ConstantsChain constants_chain(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("CFL fraction out of range");
    ConstantsChain ch;
    ch.beta = beta;
    ch.alpha = 0.5 * alpha_limit(beta);
    ch.c_min = dissipation_floor(ch.alpha, beta);

    // eps trades dissipation floor against the weight of the cubic error
    // term; sweep a fixed grid of shares of the break-even value and keep the
    // best pre-absorption dissipation.
    const double eps_even = ch.c_min / (2.0 * (1.0 + ch.alpha) * beta);
    double best_nu0 = -std::numeric_limits<double>::infinity();
    for (double share : {0.5, 0.25, 0.125, 0.0625}) {
        const double eps = eps_even * share;
        const double nu0 = dissipation_before_absorption(ch.alpha, beta, eps);
        if (nu0 > best_nu0) {
            best_nu0 = nu0;
            ch.eps = eps;
        }
    }
    ch.nu0 = best_nu0;
    ch.nu = 0.5 * ch.nu0;

    // eps2 splits the cross term between dissipation and error; pick it so
    // that the dissipation spent on absorption is exactly nu0/2.
    const double wa = 1.0 + ch.alpha;
    const double ia = 1.0 + 1.0 / ch.alpha;
    const double absorb_per_eps2 = 8.0 * wa * beta / ch.eps + 2.0 * ia * beta * beta;
    ch.eps2 = ch.nu / absorb_per_eps2;

    const double cross = 0.25 / ch.eps2 + 1.5;
    ch.c_err_kinetic = 4.0 * ia + (ia * beta + 4.0 * wa / ch.eps) * cross;
    ch.c_err_macro = 0.5 * ch.c_err_kinetic;
    return ch;
}

KineticInequalityAudit kinetic_inequality_residual(const KineticUpdate& upd,
                                                   const ConstantsChain& chain,
                                                   const SchemeParams& p) {
    const double g = upd.g;
    const double kappa = entropy_cubic_coeff(g);
    const double sigma = upd.sigma;
    const double err_weight = chain.c_err_kinetic * (sigma * upd.v_max) * (sigma * upd.v_max);
    const EntropyFluxTerms terms = entropy_flux_terms(upd);
    const NeighborhoodScale sc = audit_scale(upd);

    KineticInequalityAudit audit;
    audit.scale = sc.flux;
    const std::size_t n = upd.rule.size();
    audit.violation.resize(n);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = upd.rule.nodes[k];
        const double mc = upd.m_center[k];
        const double dr = upd.m_right_plus[k] - upd.m_right_minus[k];
        const double dl = upd.m_left_plus[k] - upd.m_left_minus[k];
        const double dissipation = xi <= 0.0
            ? (upd.m_right_plus[k] + upd.m_right_minus[k]) * dr * dr
            : (upd.m_left_minus[k] + upd.m_left_plus[k]) * dl * dl;
        const double er = mc - upd.m_right_minus[k];
        const double el = mc - upd.m_left_plus[k];
        const double error = mc * (er * er + el * el);

        const double lhs = entropy_of_density(g, upd.f[k], xi, upd.z_center);
        const double rhs = kinetic_entropy(g, mc, xi, upd.z_center) -
                           sigma * (terms.right[k] - terms.left[k]) -
                           chain.nu * sigma * std::abs(xi) * kappa * dissipation +
                           err_weight * kappa * error;
        audit.violation[k] = lhs - rhs;
        worst = std::max(worst, audit.violation[k]);
    }
    audit.worst = worst / audit.scale;
    (void)p;
    return audit;
}

ResidualDecomposition residual_decomposition(const KineticUpdate& upd,
                                             const ConstantsChain& chain) {
    const double g = upd.g;
    const double kappa = entropy_cubic_coeff(g);
    const double sigma = upd.sigma;
    const double u = upd.u_center;
    const double wa = 1.0 + chain.alpha;
    const double ia = 1.0 + 1.0 / chain.alpha;

    ResidualDecomposition dec;
    const std::size_t n = upd.rule.size();
    dec.remainder.resize(n);
    dec.remainder_closed.resize(n);
    dec.overshoot_direct.resize(n);
    dec.overshoot_factored.resize(n);
    dec.weight.resize(n);
    dec.weight_floor.resize(n);

    double m_peak = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        m_peak = std::max({m_peak, upd.m_center[k], upd.m_right_plus[k], upd.m_left_minus[k]});
    const double cubic_scale = std::max(kappa * m_peak * m_peak * m_peak, 1e-300) *
                               (1.0 + sigma * (upd.v_max + std::abs(u)));
    const double weight_scale = std::max(kappa * m_peak, 1e-300);

    for (std::size_t k = 0; k < n; ++k) {
        const double xi = upd.rule.nodes[k];
        const double mc = upd.m_center[k];
        const double f = upd.f[k];
        const double fdiff = f - mc;
        const double sxi = sigma * xi;
        const double delta = upd.m_right_minus[k] - upd.m_left_plus[k];
        const double body = 2.0 * mc + f;

        dec.remainder[k] = entropy_of_density(g, f, xi, upd.z_center) -
                           kinetic_entropy(g, mc, xi, upd.z_center) -
                           kinetic_entropy_prime(g, mc, xi, upd.z_center) * fdiff;
        dec.remainder_closed[k] = kappa * body * fdiff * fdiff;

        const double cross = kappa * sigma * sigma * ia * u * u * body * delta * delta;
        if (xi <= 0.0) {
            const double a = upd.m_right_minus[k];
            const double b = upd.m_right_plus[k];
            const double jump = b - a;
            dec.overshoot_direct[k] =
                sxi * kappa * ((b + 2.0 * a) + wa * sxi * body) * jump * jump + cross;
            dec.weight[k] = kappa * ((1.0 - wa * sxi * sxi) * b +
                                     (2.0 + wa * sxi * sxi + 3.0 * wa * sxi) * a);
            dec.weight_floor[k] = kappa * chain.c_min * (b + a);
            const double mu = jump * jump * (3.0 * (mc - a) - sigma * u * delta);
            dec.overshoot_factored[k] =
                sxi * dec.weight[k] * jump * jump + cross + kappa * wa * sxi * sxi * mu;
        } else {
            const double c = upd.m_left_minus[k];
            const double d = upd.m_left_plus[k];
            const double jump = d - c;
            dec.overshoot_direct[k] =
                -sxi * kappa * ((c + 2.0 * d) - wa * sxi * body) * jump * jump + cross;
            dec.weight[k] = kappa * ((1.0 - wa * sxi * sxi) * c +
                                     (2.0 + wa * sxi * sxi - 3.0 * wa * sxi) * d);
            dec.weight_floor[k] = kappa * chain.c_min * (c + d);
            const double mu = jump * jump * (3.0 * (mc - d) - sigma * u * delta);
            dec.overshoot_factored[k] =
                -sxi * dec.weight[k] * jump * jump + cross + kappa * wa * sxi * sxi * mu;
        }

        dec.worst_form_gap = std::max(
            dec.worst_form_gap,
            std::abs(dec.overshoot_direct[k] - dec.overshoot_factored[k]) / cubic_scale);
        dec.worst_weight_violation =
            std::max(dec.worst_weight_violation,
                     (dec.weight_floor[k] - dec.weight[k]) / weight_scale);
        dec.worst_remainder_gap =
            std::max(dec.worst_remainder_gap,
                     std::abs(dec.remainder[k] - dec.remainder_closed[k]) / cubic_scale);
    }
    return dec;
}

SemiDiscreteAudit semi_discrete_audit(const CellNeighborhood& c, const SchemeParams& p) {
    const KineticUpdate upd = kinetic_update(c, 0.0, p);
    const double g = upd.g;
    const EntropyFluxTerms terms = entropy_flux_terms(upd);
    const NeighborhoodScale sc = audit_scale(upd);

    SemiDiscreteAudit audit;
    audit.scale = sc.flux;
    const std::size_t n = upd.rule.size();
    audit.violation.resize(n);

    std::vector<double> flux_diff(n);
    std::vector<double> corr_right(n);
    std::vector<double> corr_left(n);
    const auto [eh, eq] = entropy_gradient(g, upd.h_center, upd.u_center);

    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = upd.rule.nodes[k];
        const double mc = upd.m_center[k];
        const double lhs =
            kinetic_entropy_prime(g, mc, xi, upd.z_center) * transport_term(upd, k);
        const double sharpening =
            xi <= 0.0
                ? -xi * entropy_bregman(g, upd.m_right_plus[k], upd.m_right_minus[k])
                : xi * entropy_bregman(g, upd.m_left_minus[k], upd.m_left_plus[k]);
        audit.violation[k] = terms.right[k] - terms.left[k] + sharpening - lhs;
        worst = std::max(worst, audit.violation[k]);

        flux_diff[k] = terms.right[k] - terms.left[k];
        const double grad = eh + eq * xi + g * upd.z_center;
        const double hc = kinetic_entropy(g, mc, xi, upd.z_center);
        corr_right[k] =
            xi * (hc - kinetic_entropy(g, upd.m_right_minus[k], xi, upd.rec_right.z_star)) +
            grad * (xi * (upd.m_right_minus[k] - mc) + upd.dm_right[k]);
        corr_left[k] =
            xi * (hc - kinetic_entropy(g, upd.m_left_plus[k], xi, upd.rec_left.z_star)) +
            grad * (xi * (upd.m_left_plus[k] - mc) + upd.dm_left[k]);
    }
    audit.worst = worst / audit.scale;

    const double gt_right = numerical_entropy_flux(upd.rec_right.minus, upd.rec_right.plus,
                                                   upd.rec_right.z_star, g);
    const double gt_left = numerical_entropy_flux(upd.rec_left.minus, upd.rec_left.plus,
                                                  upd.rec_left.z_star, g);
    audit.flux_identity_residual =
        std::abs(upd.rule.integrate(flux_diff) - (gt_right - gt_left));
    audit.correction_right = std::abs(upd.rule.integrate(corr_right));
    audit.correction_left = std::abs(upd.rule.integrate(corr_left));
    return audit;
}

EntropyAudit macro_audit(std::span<const ConservedState> before,
                         std::span<const ConservedState> after, const StepReport& report,
                         const Grid1D& grid, const ConstantsChain& chain,
                         const SchemeParams& p) {
    const std::size_t n = grid.n_cells();
    if (before.size() != n || after.size() != n || report.interfaces.size() != n + 1)
        throw std::invalid_argument("step report does not match grid");

    const double g = p.g;
    double h_max = 0.0, z_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        h_max = std::max({h_max, before[i].h, after[i].h});
        z_max = std::max(z_max, std::abs(grid.z[i]));
    }

    EntropyAudit audit;
    audit.scale = energy_scale(g, h_max, report.v_max, z_max);
    const double tol = p.quad_tol * audit.scale;

    std::vector<double> gt(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const InterfaceData& d = report.interfaces[j];
        gt[j] = numerical_entropy_flux(d.rec.minus, d.rec.plus, d.rec.z_star, g);
    }

    audit.dissipation.resize(n);
    audit.bound.resize(n);
    audit.max_dissipation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double sigma = report.sigma[i];
        const double u_old = velocity(before[i], p);
        const double u_new = velocity(after[i], p);
        const double e_old = entropy_pair(g, before[i].h, u_old, grid.z[i]).first;
        const double e_new = entropy_pair(g, after[i].h, u_new, grid.z[i]).first;
        const double d_val = e_new - e_old + sigma * (gt[i + 1] - gt[i]);

        const double h_rec_right = report.interfaces[i + 1].rec.minus.h;
        const double h_rec_left = report.interfaces[i].rec.plus.h;
        const double gap_right = before[i].h - h_rec_right;
        const double gap_left = before[i].h - h_rec_left;
        const double sv = sigma * report.v_max;
        const double denom = sv * sv * g * (gap_right * gap_right + gap_left * gap_left);

        audit.dissipation[i] = d_val;
        audit.bound[i] = chain.c_err_macro * denom;
        audit.max_dissipation = std::max(audit.max_dissipation, d_val);
        audit.sum_positive += grid.dx(i) * std::max(d_val, 0.0);

        bool bad = d_val > audit.bound[i] + tol;

        // Reconstruction gaps must sit between zero and the elevation jump.
        const double dz_right = std::abs(report.interfaces[i + 1].rec.dz);
        const double dz_left = std::abs(report.interfaces[i].rec.dz);
        const double slack =
            64.0 * std::numeric_limits<double>::epsilon() * (before[i].h + z_max + 1.0);
        if (gap_right < -slack || gap_right > dz_right + slack) bad = true;
        if (gap_left < -slack || gap_left > dz_left + slack) bad = true;

        if (bad) audit.flags.push_back(i);

        // The observed ratio only means something where the bound itself is
        // resolvable; ulp-sized reconstruction gaps would turn it into noise.
        if (denom > p.quad_tol * audit.scale)
            audit.empirical_constant = std::max(audit.empirical_constant, d_val / denom);
    }
    return audit;
}

CounterexampleResult counterexample_audit(double h_left, double u, double z_left,
                                          double z_right, double sigma,
                                          const SchemeParams& p) {
    p.validate();
    if (!(h_left > p.h_dry)) throw std::invalid_argument("left state must be wet");
    const double h_right = h_left + z_left - z_right;
    if (!(h_right > 0.0)) throw std::invalid_argument("implied right height is not positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

    const double g = p.g;
    const ConservedState ul{h_left, h_left * u};
    const ConservedState ur{h_right, h_right * u};
    const std::array<ConservedState, 2> pair{ul, ur};
    const double v_max = max_wave_speed(pair, p);
    if (sigma * v_max > p.beta * (1.0 + 1e-12)) throw std::runtime_error("CFL violated");

    // Interface left of the probed cell joins two copies of the left state.
    const InterfaceReconstruction rec_l = reconstruct(ul, ul, z_left, z_left, p);
    const FluxPair flux_l = kinetic_flux(rec_l.minus, rec_l.plus, g);
    const double p_plus_l = flux_l.momentum - 0.5 * g * rec_l.plus.h * rec_l.plus.h;

    const InterfaceReconstruction rec_r = reconstruct(ul, ur, z_left, z_right, p);
    const FluxPair flux_r = kinetic_flux(rec_r.minus, rec_r.plus, g);
    const double p_minus_r = flux_r.momentum - 0.5 * g * rec_r.minus.h * rec_r.minus.h;

    const double df_mass = flux_r.mass - flux_l.mass;
    const double df_mom = p_minus_r - p_plus_l;

    // Bregman gap of eta between the updated and current state; exact
    // quadratic form, no cancellation at small sigma.
    const double h_new = h_left - sigma * df_mass;
    const double q_new = ul.q - sigma * df_mom;
    if (!(h_new > 0.0)) throw std::runtime_error("updated height not positive");
    const double u_new = q_new / h_new;
    const double bregman =
        0.5 * h_new * (u_new - u) * (u_new - u) + 0.5 * g * (h_new - h_left) * (h_new - h_left);

    const double gt_left = numerical_entropy_flux(rec_l.minus, rec_l.plus, rec_l.z_star, g);
    const double gt_right = numerical_entropy_flux(rec_r.minus, rec_r.plus, rec_r.z_star, g);
    const auto [eh, eq] = entropy_gradient(g, h_left, u);

    CounterexampleResult res;
    res.sigma = sigma;
    res.semi_residual =
        -(eh * df_mass + eq * df_mom) - g * z_left * df_mass + (gt_right - gt_left);
    res.dissipation = bregman + sigma * res.semi_residual;
    res.rate = res.dissipation / sigma;
    return res;
}

LipschitzAudit lipschitz_audit(const PrimitiveState& s1, const PrimitiveState& s2,
                               const PrimitiveState& s3, const SchemeParams& p) {
    const double g = p.g;
    const double lip_const = 3.0 / (g * g * std::numbers::pi * std::numbers::pi);

    LipschitzAudit audit;
    {
        const std::array<PrimitiveState, 2> states{s1, s2};
        const QuadratureRule rule = build_quadrature_primitive(states, g, p.quad_nodes);
        audit.pair_lhs = rule.integrate_fn([&](double xi) {
            const double m1 = maxwellian(g, s1.h, s1.u, xi);
            const double m2 = maxwellian(g, s2.h, s2.u, xi);
            return m1 * (m1 - m2) * (m1 - m2);
        });
        const double dh = s2.h - s1.h, du = s2.u - s1.u;
        audit.pair_rhs = lip_const * (g * dh * dh + std::min(s1.h, s2.h) * du * du);
    }
    {
        const std::array<PrimitiveState, 3> states{s1, s2, s3};
        const QuadratureRule rule = build_quadrature_primitive(states, g, p.quad_nodes);
        audit.triple_lhs = rule.integrate_fn([&](double xi) {
            const double m1 = maxwellian(g, s1.h, s1.u, xi);
            const double m2 = maxwellian(g, s2.h, s2.u, xi);
            const double m3 = maxwellian(g, s3.h, s3.u, xi);
            return m3 * (m1 - m2) * (m1 - m2);
        });
        const double dh1 = s3.h - s1.h, dh2 = s3.h - s2.h;
        const double du1 = s3.u - s1.u, du2 = s3.u - s2.u;
        audit.triple_rhs = 2.0 * lip_const *
                           (g * dh1 * dh1 + g * dh2 * dh2 + std::min(s1.h, s3.h) * du1 * du1 +
                            std::min(s2.h, s3.h) * du2 * du2);
    }
    const double h_max = std::max({s1.h, s2.h, s3.h});
    const double u_max = std::max({std::abs(s1.u), std::abs(s2.u), std::abs(s3.u)});
    audit.scale = std::max(lip_const * (g * h_max * h_max + h_max * u_max * u_max), 1e-300);
    return audit;
}

NoTopoAudit no_topo_audit(const CellNeighborhood& c, double sigma, const SchemeParams& p) {
    p.validate();
    if (c.z_left != c.z_center || c.z_right != c.z_center)
        throw std::invalid_argument("flat topography required");
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be finite and nonnegative");

    const double g = p.g;
    const std::array<ConservedState, 3> tri{c.left, c.center, c.right};
    const double v_max = max_wave_speed(tri, p);
    if (sigma * v_max > 1.0 + 1e-12) throw std::runtime_error("CFL violated");

    const PrimitiveState sl{std::max(c.left.h, 0.0), velocity(c.left, p)};
    const PrimitiveState sc{std::max(c.center.h, 0.0), velocity(c.center, p)};
    const PrimitiveState sr{std::max(c.right.h, 0.0), velocity(c.right, p)};
    const std::array<PrimitiveState, 3> states{sl, sc, sr};
    const std::array<double, 1> zero{0.0};
    const QuadratureRule rule = build_quadrature_primitive(states, g, p.quad_nodes, zero);

    NoTopoAudit audit;
    const std::size_t n = rule.size();
    audit.conservative_violation.resize(n);
    audit.semi_violation.resize(n);
    audit.ordering_violation.resize(n);

    std::vector<double> f0(n);
    std::vector<double> h0_f0(n);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = rule.nodes[k];
        const double ml = maxwellian(g, sl.h, sl.u, xi);
        const double mc = maxwellian(g, sc.h, sc.u, xi);
        const double mr = maxwellian(g, sr.h, sr.u, xi);

        const double transport = xi <= 0.0 ? xi * (mr - mc) : xi * (mc - ml);
        f0[k] = mc - sigma * transport;
        h0_f0[k] = entropy_of_density(g, f0[k], xi, 0.0);

        const double flux_diff = xi <= 0.0
            ? xi * (kinetic_entropy(g, mr, xi, 0.0) - kinetic_entropy(g, mc, xi, 0.0))
            : xi * (kinetic_entropy(g, mc, xi, 0.0) - kinetic_entropy(g, ml, xi, 0.0));

        audit.conservative_violation[k] =
            h0_f0[k] - (kinetic_entropy(g, mc, xi, 0.0) - sigma * flux_diff);
        audit.semi_violation[k] =
            flux_diff - kinetic_entropy_prime(g, mc, xi, 0.0) * transport;
        audit.ordering_violation[k] = sigma * audit.semi_violation[k];

        worst = std::max({worst, audit.conservative_violation[k], audit.semi_violation[k],
                          audit.ordering_violation[k]});
    }

    double m0 = 0.0, m1 = 0.0, h_int = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        m0 += rule.weights[k] * f0[k];
        m1 += rule.weights[k] * rule.nodes[k] * f0[k];
        h_int += rule.weights[k] * h0_f0[k];
    }
    const double eta_moments = m0 > 1e-300 ? 0.5 * m1 * m1 / m0 + 0.5 * g * m0 * m0 : 0.0;
    audit.projection_violation = eta_moments - h_int;

    const double h_peak = std::max({sl.h, sc.h, sr.h});
    audit.scale = kinetic_entropy_scale(g, h_peak, v_max, 0.0) * (1.0 + v_max);
    audit.worst = std::max(worst, audit.projection_violation) / audit.scale;
    return audit;
}

} // namespace kinsw
