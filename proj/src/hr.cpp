#include "kinsw/hr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kinsw {

namespace {

double half_pressure(double g, double h) { return 0.5 * g * h * h; }

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

} // namespace

InterfaceReconstruction reconstruct(const ConservedState& left, const ConservedState& right,
                                    double z_left, double z_right, const SchemeParams& p) {
    InterfaceReconstruction rec;
    rec.z_star = std::max(z_left, z_right);
    rec.dz = z_right - z_left;
    const double u_left = velocity(left, p);
    const double u_right = velocity(right, p);
    const double h_minus =
        rec.z_star == z_left ? positive_part(left.h) : positive_part(left.h + z_left - rec.z_star);
    const double h_plus = rec.z_star == z_right ? positive_part(right.h)
                                                : positive_part(right.h + z_right - rec.z_star);
    rec.minus = {h_minus, u_left};
    rec.plus = {h_plus, u_right};
    return rec;
}

std::pair<FluxPair, FluxPair> hr_interface_fluxes(const InterfaceReconstruction& rec,
                                                  const ConservedState& left,
                                                  const ConservedState& right, double g) {
    const FluxPair f = kinetic_flux(rec.minus, rec.plus, g);
    FluxPair f_left = f;
    f_left.momentum += half_pressure(g, left.h) - half_pressure(g, rec.minus.h);
    FluxPair f_right = f;
    f_right.momentum += half_pressure(g, right.h) - half_pressure(g, rec.plus.h);
    return {f_left, f_right};
}

StepResult step(std::span<const ConservedState> states, const Grid1D& grid, double dt,
                const SchemeParams& p) {
    p.validate();
    grid.validate();
    const std::size_t n = grid.n_cells();
    if (states.size() != n) throw std::invalid_argument("state count does not match grid");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");

    const GhostCell gl = ghost_cell(states, grid, -1);
    const GhostCell gr = ghost_cell(states, grid, +1);

    double v_max = max_wave_speed(states, p);
    v_max = std::max(v_max, max_wave_speed(std::span<const ConservedState>(&gl.state, 1), p));
    v_max = std::max(v_max, max_wave_speed(std::span<const ConservedState>(&gr.state, 1), p));

    // Reject the step before doing any work if it would break the CFL
    // condition anywhere (tiny headroom for the dt = beta*dx/v rounding).
    const double cfl_slack = 1.0 + 1e-12;
    for (std::size_t i = 0; i < n; ++i) {
        if (dt / grid.dx(i) * v_max > p.beta * cfl_slack) throw std::runtime_error("CFL violated");
    }

    StepResult out;
    out.report.dt = dt;
    out.report.v_max = v_max;
    out.report.ghost_left = gl;
    out.report.ghost_right = gr;
    out.report.sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.report.sigma[i] = dt / grid.dx(i);

    // Interface j separates cell j-1 (ghost for j = 0) from cell j (ghost for
    // j = n). Each interface is reconstructed and fluxed exactly once.
    out.report.interfaces.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const ConservedState& ul = j == 0 ? gl.state : states[j - 1];
        const ConservedState& ur = j == n ? gr.state : states[j];
        const double zl = j == 0 ? gl.z : grid.z[j - 1];
        const double zr = j == n ? gr.z : grid.z[j];
        InterfaceData& d = out.report.interfaces[j];
        d.rec = reconstruct(ul, ur, zl, zr, p);
        d.flux = kinetic_flux(d.rec.minus, d.rec.plus, p.g);
        d.p_minus = d.flux.momentum - half_pressure(p.g, d.rec.minus.h);
        d.p_plus = d.flux.momentum - half_pressure(p.g, d.rec.plus.h);
    }

    out.states.resize(n);
    double min_h = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const InterfaceData& left = out.report.interfaces[i];
        const InterfaceData& right = out.report.interfaces[i + 1];
        const double s = out.report.sigma[i];
        ConservedState u;
        u.h = states[i].h - s * (right.flux.mass - left.flux.mass);
        u.q = states[i].q - s * (right.p_minus - left.p_plus);
        min_h = std::min(min_h, u.h);
        out.states[i] = dry_fix(u, p);
    }
    out.report.min_h_updated = min_h;
    return out;
}

} // namespace kinsw
