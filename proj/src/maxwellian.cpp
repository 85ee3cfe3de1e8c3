#include "kinsw/maxwellian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kinsw {

namespace {

constexpr double pi = std::numbers::pi;

// Primitives of sqrt(a^2 - s^2), s*sqrt(a^2 - s^2), s^2*sqrt(a^2 - s^2) on
// [-a, a]; the asin argument is clamped against roundoff at the edges.
double prim0(double a, double s) {
    const double r2 = std::max(a * a - s * s, 0.0);
    const double arg = a > 0.0 ? std::clamp(s / a, -1.0, 1.0) : 0.0;
    return 0.5 * (s * std::sqrt(r2) + a * a * std::asin(arg));
}

double prim1(double a, double s) {
    const double r2 = std::max(a * a - s * s, 0.0);
    return -r2 * std::sqrt(r2) / 3.0;
}

double prim2(double a, double s) {
    const double r2 = std::max(a * a - s * s, 0.0);
    const double arg = a > 0.0 ? std::clamp(s / a, -1.0, 1.0) : 0.0;
    const double a2 = a * a;
    return 0.125 * (a2 * a2 * std::asin(arg) + s * (2.0 * s * s - a2) * std::sqrt(r2));
}

double prim3(double a, double s) {
    const double r2 = std::max(a * a - s * s, 0.0);
    return -r2 * std::sqrt(r2) * (3.0 * s * s + 2.0 * a * a) / 15.0;
}

// Primitives of (a^2 - s^2)^{3/2} and s*(a^2 - s^2)^{3/2}.
double prim_cube0(double a, double s) {
    const double r2 = std::max(a * a - s * s, 0.0);
    const double root = std::sqrt(r2);
    const double arg = a > 0.0 ? std::clamp(s / a, -1.0, 1.0) : 0.0;
    const double a2 = a * a;
    return 0.25 * s * r2 * root + 0.375 * a2 * (s * root + a2 * std::asin(arg));
}

double prim_cube1(double a, double s) {
    const double r2 = std::max(a * a - s * s, 0.0);
    return -r2 * r2 * std::sqrt(r2) / 5.0;
}

// Clamped integration range in the shifted variable s = xi - u; empty ranges
// collapse to [0, 0].
std::pair<double, double> clip_range(double a, double u, double lo, double hi) {
    const double s0 = std::max(lo - u, -a);
    const double s1 = std::min(hi - u, a);
    return s0 < s1 ? std::pair{s0, s1} : std::pair{0.0, 0.0};
}

} // namespace

double maxwellian(double g, double h, double u, double xi) {
    if (!(h > 0.0)) return 0.0;
    const double s = xi - u;
    const double r = 2.0 * g * h - s * s;
    return r > 0.0 ? std::sqrt(r) / (g * pi) : 0.0;
}

std::pair<double, double> maxwellian_support(double g, double h, double u) {
    const double a = h > 0.0 ? std::sqrt(2.0 * g * h) : 0.0;
    return {u - a, u + a};
}

Moments3 maxwellian_moments(double g, double h, double u) {
    if (!(h > 0.0)) return {};
    return {h, h * u, h * u * u + 0.5 * g * h * h};
}

Moments3 maxwellian_moments_clipped(double g, double h, double u, double lo, double hi) {
    if (!(h > 0.0)) return {};
    const double a = std::sqrt(2.0 * g * h);
    const auto [s0, s1] = clip_range(a, u, lo, hi);
    if (!(s0 < s1)) return {};
    const double i0 = prim0(a, s1) - prim0(a, s0);
    const double i1 = prim1(a, s1) - prim1(a, s0);
    const double i2 = prim2(a, s1) - prim2(a, s0);
    const double c = 1.0 / (g * pi);
    Moments3 m;
    m.m0 = c * i0;
    m.m1 = c * (u * i0 + i1);
    m.m2 = c * (u * u * i0 + 2.0 * u * i1 + i2);
    return m;
}

double maxwellian_third_moment_clipped(double g, double h, double u, double lo, double hi) {
    if (!(h > 0.0)) return 0.0;
    const double a = std::sqrt(2.0 * g * h);
    const auto [s0, s1] = clip_range(a, u, lo, hi);
    if (!(s0 < s1)) return 0.0;
    const double i0 = prim0(a, s1) - prim0(a, s0);
    const double i1 = prim1(a, s1) - prim1(a, s0);
    const double i2 = prim2(a, s1) - prim2(a, s0);
    const double i3 = prim3(a, s1) - prim3(a, s0);
    return (u * u * u * i0 + 3.0 * u * u * i1 + 3.0 * u * i2 + i3) / (g * pi);
}

double maxwellian_cubic_flux_clipped(double g, double h, double u, double lo, double hi) {
    if (!(h > 0.0)) return 0.0;
    const double a = std::sqrt(2.0 * g * h);
    const auto [s0, s1] = clip_range(a, u, lo, hi);
    if (!(s0 < s1)) return 0.0;
    const double j0 = prim_cube0(a, s1) - prim_cube0(a, s0);
    const double j1 = prim_cube1(a, s1) - prim_cube1(a, s0);
    const double c = 1.0 / (g * pi);
    return c * c * c * (u * j0 + j1);
}

double kinetic_entropy(double g, double f, double xi, double z) {
    if (f < 0.0) throw std::invalid_argument("negative kinetic density");
    return 0.5 * xi * xi * f + entropy_cubic_coeff(g) * f * f * f + g * z * f;
}

double kinetic_entropy_prime(double g, double f, double xi, double z) {
    return 0.5 * xi * xi + 3.0 * entropy_cubic_coeff(g) * f * f + g * z;
}

double entropy(double g, double h, double u) {
    return 0.5 * h * u * u + 0.5 * g * h * h;
}

double entropy_flux(double g, double h, double u) {
    return (0.5 * h * u * u + g * h * h) * u;
}

std::pair<double, double> entropy_pair(double g, double h, double u, double z) {
    return {entropy(g, h, u) + g * h * z, entropy_flux(g, h, u) + g * h * z * u};
}

std::pair<double, double> entropy_gradient(double g, double h, double u) {
    if (!(h > 0.0)) return {0.0, 0.0};
    return {g * h - 0.5 * u * u, u};
}

double subdifferential_residual(double g, double h, double u, double f, double xi) {
    if (f < 0.0) throw std::invalid_argument("negative kinetic density");
    const double m = maxwellian(g, h, u, xi);
    const auto [e_h, e_q] = entropy_gradient(g, h, u);
    const double h0_f = kinetic_entropy(g, f, xi, 0.0);
    const double h0_m = kinetic_entropy(g, m, xi, 0.0);
    return h0_f - h0_m - (e_h + e_q * xi) * (f - m);
}

double kinetic_entropy_scale(double g, double h_ref, double u_ref, double z_ref) {
    const double h = std::max(h_ref, 0.0);
    const double sg = std::sqrt(g);
    const double s = sg * h * std::sqrt(h)                      // pressure part
                     + std::sqrt(h / g) * u_ref * u_ref        // transport part
                     + sg * std::sqrt(h) * std::abs(z_ref);    // potential part
    return std::max(s, 1e-300);
}

double energy_scale(double g, double h_ref, double u_ref, double z_ref) {
    const double h = std::max(h_ref, 0.0);
    const double s = g * h * h + h * u_ref * u_ref + g * h * std::abs(z_ref);
    return std::max(s, 1e-300);
}

} // namespace kinsw
