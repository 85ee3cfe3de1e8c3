#include "kinsw/core.hpp"

#include <algorithm>
#include <cmath>

namespace kinsw {

double velocity(const ConservedState& u, const SchemeParams& p) {
    if (u.h > p.h_dry) return u.q / u.h;
    return 0.0;
}

ConservedState dry_fix(ConservedState u, const SchemeParams& p) {
    if (u.h < 0.0) u.h = 0.0;
    if (u.h < p.h_dry) u.q = 0.0;
    return u;
}

double max_wave_speed(std::span<const ConservedState> states, const SchemeParams& p) {
    if (states.empty()) throw std::invalid_argument("empty state");
    double vm = 0.0;
    for (const ConservedState& s : states) {
        const double u = velocity(s, p);
        const double h = std::max(s.h, 0.0);
        vm = std::max(vm, std::abs(u) + std::sqrt(2.0 * p.g * h));
    }
    return vm;
}

} // namespace kinsw
