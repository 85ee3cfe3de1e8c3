#include "stoker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stoker {
namespace {

// Velocity drop across the wave connecting the outer depth hk to the star
// depth hs: a rarefaction for hs <= hk, a shock otherwise. Strictly
// increasing in hs, with f(0+) = -2 sqrt(g hk) and f -> +infinity.
double depth_function(double g, double hs, double hk) {
    if (hs <= hk) return 2.0 * (std::sqrt(g * hs) - std::sqrt(g * hk));
    const double a = 0.5 * g * (1.0 / hk + 1.0 / hs);
    return (hs - hk) * std::sqrt(a);
}

double depth_function_dh(double g, double hs, double hk) {
    if (hs <= hk) return std::sqrt(g / hs);
    const double a = 0.5 * g * (1.0 / hk + 1.0 / hs);
    const double da = -0.5 * g / (hs * hs);
    return std::sqrt(a) + 0.5 * (hs - hk) * da / std::sqrt(a);
}

// Sample inside the left rarefaction fan, where u + 2c is constant and the
// characteristic speed u - c equals xi.
RiemannState left_fan(double g, const RiemannState& left, double cl, double xi) {
    const double c = (left.u + 2.0 * cl - xi) / 3.0;
    return {c * c / g, (left.u + 2.0 * cl + 2.0 * xi) / 3.0};
}

// Mirror image for the right fan: u - 2c constant, u + c = xi.
RiemannState right_fan(double g, const RiemannState& right, double cr, double xi) {
    const double c = (xi - (right.u - 2.0 * cr)) / 3.0;
    return {c * c / g, (right.u - 2.0 * cr + 2.0 * xi) / 3.0};
}

} // namespace

StarRegion star_region(double g, const RiemannState& left, const RiemannState& right) {
    if (!(g > 0.0)) throw std::invalid_argument("gravity must be positive");
    if (left.h < 0.0 || right.h < 0.0) throw std::invalid_argument("depth must be nonnegative");
    if (left.h == 0.0 || right.h == 0.0) return {0.0, 0.0, true};

    const double cl = std::sqrt(g * left.h);
    const double cr = std::sqrt(g * right.h);
    const double du = right.u - left.u;
    if (du >= 2.0 * (cl + cr)) return {0.0, 0.0, true};

    // phi(hs) = f(hs; h_l) + f(hs; h_r) + du is strictly increasing with
    // phi(0+) < 0 (the dry case is excluded above), so the root is unique.
    // Newton from the two-rarefaction estimate, with a bisection bracket as
    // the safety net.
    double lo = 0.0;
    double hi = std::max(left.h, right.h);
    while (depth_function(g, hi, left.h) + depth_function(g, hi, right.h) + du < 0.0) hi *= 2.0;

    const double c0 = 0.5 * (cl + cr) - 0.25 * du;
    double hs = std::clamp(c0 * c0 / g, 1e-12 * hi, hi);
    for (int it = 0; it < 100; ++it) {
        const double phi = depth_function(g, hs, left.h) + depth_function(g, hs, right.h) + du;
        if (phi > 0.0) hi = hs;
        else lo = hs;
        double next = hs - phi / (depth_function_dh(g, hs, left.h) + depth_function_dh(g, hs, right.h));
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - hs) <= 1e-16 * hs) {
            hs = next;
            break;
        }
        hs = next;
    }

    const double fl = depth_function(g, hs, left.h);
    const double fr = depth_function(g, hs, right.h);
    return {hs, 0.5 * (left.u + right.u) + 0.5 * (fr - fl), false};
}

RiemannState sample(double g, const RiemannState& left, const RiemannState& right, double xi) {
    const bool wet_l = left.h > 0.0;
    const bool wet_r = right.h > 0.0;
    const double cl = wet_l ? std::sqrt(g * left.h) : 0.0;
    const double cr = wet_r ? std::sqrt(g * right.h) : 0.0;

    if (!wet_l && !wet_r) return {0.0, 0.0};
    if (wet_l && !wet_r) {
        // Single rarefaction spreading onto the dry bed, front at u_l + 2 c_l.
        if (xi <= left.u - cl) return left;
        if (xi >= left.u + 2.0 * cl) return {0.0, 0.0};
        return left_fan(g, left, cl, xi);
    }
    if (!wet_l && wet_r) {
        if (xi >= right.u + cr) return right;
        if (xi <= right.u - 2.0 * cr) return {0.0, 0.0};
        return right_fan(g, right, cr, xi);
    }

    const StarRegion star = star_region(g, left, right);
    if (star.dry) {
        // Two rarefactions around a growing vacuum.
        if (xi <= left.u - cl) return left;
        if (xi < left.u + 2.0 * cl) return left_fan(g, left, cl, xi);
        if (xi <= right.u - 2.0 * cr) return {0.0, 0.0};
        if (xi < right.u + cr) return right_fan(g, right, cr, xi);
        return right;
    }

    const double cs = std::sqrt(g * star.h);
    if (xi <= star.u) {
        if (star.h > left.h) {
            const double s = left.u - cl * std::sqrt(0.5 * star.h * (star.h + left.h)) / left.h;
            return xi <= s ? left : RiemannState{star.h, star.u};
        }
        if (xi <= left.u - cl) return left;
        if (xi >= star.u - cs) return {star.h, star.u};
        return left_fan(g, left, cl, xi);
    }
    if (star.h > right.h) {
        const double s = right.u + cr * std::sqrt(0.5 * star.h * (star.h + right.h)) / right.h;
        return xi >= s ? right : RiemannState{star.h, star.u};
    }
    if (xi >= right.u + cr) return right;
    if (xi <= star.u + cs) return {star.h, star.u};
    return right_fan(g, right, cr, xi);
}

} // namespace stoker
