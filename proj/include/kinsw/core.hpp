#pragma once

#include <span>
#include <stdexcept>

namespace kinsw {

// Conserved variables of the 1D Saint-Venant system per unit width:
// water height h [m] and discharge q = h*u [m^2/s].
struct ConservedState {
    double h = 0.0;
    double q = 0.0;
};

inline bool operator==(const ConservedState& a, const ConservedState& b) {
    return a.h == b.h && a.q == b.q;
}

// Scheme-wide parameters shared by all modules.
struct SchemeParams {
    double g = 9.81;        // gravitational acceleration [m/s^2], > 0
    double beta = 0.5;      // CFL fraction, in (0,1)
    double h_dry = 1e-12;   // dry threshold [m]; below it a cell is dry and u := 0
    int quad_nodes = 64;    // quadrature nodes per panel, >= 8
    double quad_tol = 1e-9; // audit tolerance on nondimensionalized residuals

    void validate() const {
        if (!(g > 0.0)) throw std::invalid_argument("gravity must be positive");
        if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("CFL fraction out of range");
        if (!(h_dry >= 0.0)) throw std::invalid_argument("dry threshold must be nonnegative");
        if (quad_nodes < 8) throw std::invalid_argument("quadrature nodes must be at least 8");
        if (!(quad_tol > 0.0)) throw std::invalid_argument("audit tolerance must be positive");
    }
};

// Velocity with dry regularization: q/h for wet cells, 0 for dry ones.
// Callers that need the dry fix on q itself use dry_fix().
double velocity(const ConservedState& u, const SchemeParams& p);

// Enforce the dry-cell convention: h < h_dry means the discharge is dropped.
// Negative roundoff heights are clipped to exactly zero.
ConservedState dry_fix(ConservedState u, const SchemeParams& p);

// Largest kinetic transport speed max_i(|u_i| + sqrt(2 g h_i)) over the states.
// Returns 0 when every state is dry; throws on an empty span.
double max_wave_speed(std::span<const ConservedState> states, const SchemeParams& p);

} // namespace kinsw
