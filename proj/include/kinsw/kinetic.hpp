#pragma once

#include <vector>

#include "kinsw/hr.hpp"
#include "kinsw/quadrature.hpp"

namespace kinsw {

// A cell together with its two neighbors and elevations; the unit of work for
// the kinetic interpretation of one update and for the entropy audits.
struct CellNeighborhood {
    ConservedState left, center, right;
    double z_left = 0.0, z_center = 0.0, z_right = 0.0;
};

// Topography contribution to the transported density,
//   (xi - u_cell) * (M(h_cell, u_cell; xi) - M(h_rec, u_cell; xi)),
// where h_rec is the reconstructed height on the cell's side of an interface.
// Vanishes identically where the cell Maxwellian vanishes, because the
// reconstructed support is contained in the cell support.
double delta_maxwellian(double g, double h_cell, double u_cell, double h_rec, double xi);

// The kinetic picture of one finite-volume update in one cell: all five
// Maxwellians, both topography terms and the transported density f, sampled
// on a shared quadrature rule whose panels resolve every support endpoint and
// the upwind switch at xi = 0.
struct KineticUpdate {
    QuadratureRule rule;
    double g = 0.0;
    double sigma = 0.0;   // dt / dx for this cell
    double v_max = 0.0;   // transport bound over the neighborhood
    double h_center = 0.0, u_center = 0.0, z_center = 0.0;
    InterfaceReconstruction rec_left, rec_right;

    // Per-node samples, aligned with rule.nodes.
    std::vector<double> m_center;     // M_i
    std::vector<double> m_right_minus; // cell side of interface i+1/2
    std::vector<double> m_right_plus;  // neighbor side of interface i+1/2
    std::vector<double> m_left_minus;  // neighbor side of interface i-1/2
    std::vector<double> m_left_plus;   // cell side of interface i-1/2
    std::vector<double> dm_right;      // (xi-u_i)(M_i - M_{i+1/2,-})
    std::vector<double> dm_left;       // (xi-u_i)(M_i - M_{i-1/2,+})
    std::vector<double> f;             // transported density before reprojection
};

// Transported density of the update, branchwise in the sign of xi:
//   xi <= 0:  f = M_i - sigma*(xi*(M_{i+1/2,+} - M_{i+1/2,-}) + u_i*(M_{i+1/2,-} - M_{i-1/2,+}))
//   xi >= 0:  f = M_i - sigma*(xi*(M_{i-1/2,+} - M_{i-1/2,-}) + u_i*(M_{i+1/2,-} - M_{i-1/2,+}))
// Both branches agree at xi = 0. Throws "CFL violated" when
// sigma * v_max exceeds the CFL fraction.
KineticUpdate kinetic_update(const CellNeighborhood& c, double sigma, const SchemeParams& p);

// Smallest sampled value of f. Nonnegative up to roundoff under the CFL
// condition; audited against -1e-14 * max M_i.
double positivity_margin(const KineticUpdate& upd);

// Moments (int f, int xi f) of the transported density. Reproduces the
// macroscopic update of hr::step up to quadrature tolerance.
ConservedState update_moments(const KineticUpdate& upd);

// Deviation of the discrete topography term from its smooth-limit form
//   g * dz/dx * (xi - u) * M / (2 g h - (xi - u)^2)
// measured at quadrature nodes away from support edges (relative margin
// `edge_margin` of the support half width). dz_left and dz_right are the
// elevation increments z_i - z_{i-1} and z_{i+1} - z_i; both interfaces are
// probed with the cell state itself as neighbor, and the worst node residual
// is returned. Halving (dz, dx) together halves the residual.
double consistency_probe(const ConservedState& u_cell, double dz_left, double dz_right,
                         double dx, const SchemeParams& p, double edge_margin = 1e-3);

} // namespace kinsw
