#pragma once

#include <numbers>
#include <utility>

#include "kinsw/core.hpp"

namespace kinsw {

// Equilibrium (Maxwellian) kinetic density of the Saint-Venant system,
//   M(h,u;xi) = (1/(g*pi)) * sqrt(max(2*g*h - (xi-u)^2, 0)),
// a half disk in xi supported on [u - sqrt(2gh), u + sqrt(2gh)].
double maxwellian(double g, double h, double u, double xi);

// Support interval of the Maxwellian; collapses to [u,u] for a dry state.
std::pair<double, double> maxwellian_support(double g, double h, double u);

// First three xi-moments of a kinetic density.
struct Moments3 {
    double m0 = 0.0; // mass
    double m1 = 0.0; // momentum
    double m2 = 0.0; // momentum flux
};

// Closed-form full moments of M: (h, h*u, h*u^2 + g*h^2/2).
Moments3 maxwellian_moments(double g, double h, double u);

// Closed-form moments of M restricted to [lo, hi] (half-open infinities are
// allowed). Used by the interface flux and as the oracle for the quadrature.
Moments3 maxwellian_moments_clipped(double g, double h, double u, double lo, double hi);

// Closed-form int xi^3 M dxi and int xi M^3 dxi over [lo, hi]. Together with
// the clipped first moment these make the upwind entropy flux exact, which
// matters where neighboring supports nearly coincide and quadrature
// convergence degrades.
double maxwellian_third_moment_clipped(double g, double h, double u, double lo, double hi);
double maxwellian_cubic_flux_clipped(double g, double h, double u, double lo, double hi);

// Strength of the cubic term in the kinetic entropy density.
inline double entropy_cubic_coeff(double g) {
    constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
    return g * g * pi_sq / 6.0;
}

// Kinetic entropy density H(f;xi,z) = xi^2 f / 2 + (g^2 pi^2 / 6) f^3 + g z f.
// Throws for f < 0, where the entropy is not defined.
double kinetic_entropy(double g, double f, double xi, double z);

// Derivative of H with respect to f at fixed (xi, z).
double kinetic_entropy_prime(double g, double f, double xi, double z);

// Macroscopic entropy eta(U) = h u^2/2 + g h^2/2 and its flux
// G(U) = (h u^2/2 + g h^2) u.
double entropy(double g, double h, double u);
double entropy_flux(double g, double h, double u);

// Entropy pair with topography: (eta + g h z, G + g h z u).
std::pair<double, double> entropy_pair(double g, double h, double u, double z);

// Gradient of eta in conserved variables: (g h - u^2/2, u); (0,0) for a dry
// state by the velocity convention.
std::pair<double, double> entropy_gradient(double g, double h, double u);

// Pointwise slack of the subdifferential inequality at a nonnegative test
// density f and abscissa xi:
//   H0(f) - H0(M(U)) - eta'(U).(1,xi) * (f - M(U)) >= 0.
// The topography terms cancel, so the residual is z-free.
double subdifferential_residual(double g, double h, double u, double f, double xi);

// Magnitude scales used to nondimensionalize audit residuals, built from the
// largest height, speed and elevation among the participating states.
double kinetic_entropy_scale(double g, double h_ref, double u_ref, double z_ref);
double energy_scale(double g, double h_ref, double u_ref, double z_ref);

} // namespace kinsw
