#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "kinsw/hr.hpp"
#include "testutil.hpp"

using namespace kinsw;

TEST_CASE("reconstruction clips the lower side to the step elevation") {
    SchemeParams p;
    p.g = 1.0;
    const ConservedState left{2.0, 0.0};
    const ConservedState right{1.5, 0.0};
    const InterfaceReconstruction rec = reconstruct(left, right, 0.0, 0.5, p);
    CHECK(rec.z_star == 0.5);
    CHECK(rec.dz == 0.5);
    CHECK(rec.minus.h == doctest::Approx(1.5).epsilon(1e-15));
    // The side sitting at the reference elevation keeps its height bitwise.
    CHECK(rec.plus.h == 1.5);
}

TEST_CASE("flat topography reconstruction is the bitwise identity") {
    SchemeParams p;
    const ConservedState left{0.123456789, 0.3};
    const ConservedState right{1.87654321, -0.4};
    const InterfaceReconstruction rec = reconstruct(left, right, 0.25, 0.25, p);
    CHECK(rec.minus.h == left.h);
    CHECK(rec.plus.h == right.h);
    CHECK(rec.dz == 0.0);
}

TEST_CASE("a high step walls off a shallow neighbor") {
    SchemeParams p;
    const ConservedState left{0.3, 0.3 * 1.0};
    const ConservedState right{1.0, 0.0};
    const InterfaceReconstruction rec = reconstruct(left, right, 0.0, 0.5, p);
    CHECK(rec.minus.h == 0.0);
    CHECK(rec.plus.h == 1.0);
    // Only the right support reaches the interface, so mass flows leftward.
    const FluxPair f = kinetic_flux(rec.minus, rec.plus, p.g);
    CHECK(f.mass < 0.0);
}

TEST_CASE("interface fluxes add the hydrostatic pressure correction per side") {
    SchemeParams p;
    p.g = 1.0;
    const ConservedState left{2.0, 0.0};
    const ConservedState right{1.5, 0.0};
    const InterfaceReconstruction rec = reconstruct(left, right, 0.0, 0.5, p);
    const auto [f_left, f_right] = hr_interface_fluxes(rec, left, right, p.g);
    const FluxPair shared = kinetic_flux(rec.minus, rec.plus, p.g);
    CHECK(f_left.mass == shared.mass);
    CHECK(f_right.mass == shared.mass);
    // g (h_left^2 - h_minus^2) / 2 = (4 - 2.25) / 2.
    CHECK(f_left.momentum - shared.momentum == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(f_right.momentum - shared.momentum == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("flat topography fluxes reduce to the plain kinetic flux") {
    SchemeParams p;
    const ConservedState left{1.2, 0.6};
    const ConservedState right{0.8, -0.2};
    const InterfaceReconstruction rec = reconstruct(left, right, 0.0, 0.0, p);
    const auto [f_left, f_right] = hr_interface_fluxes(rec, left, right, p.g);
    const FluxPair shared = kinetic_flux({1.2, 0.5}, {0.8, -0.25}, p.g);
    CHECK(f_left.momentum == shared.momentum);
    CHECK(f_right.momentum == shared.momentum);
    CHECK(f_left.mass == shared.mass);
}

TEST_CASE("still water with dyadic elevations is a bitwise fixed point") {
    // Elevations on a 1/16 lattice make h + z reproduce the surface exactly,
    // so every flux takes the consistency shortcut and the update is exact.
    // The island cell is dry and stays dry.
    SchemeParams p;
    p.beta = 0.9;
    Grid1D grid = Grid1D::uniform(0.0, 8.0, 8, BoundaryPolicy::outflow);
    grid.z = {0.0, 0.0625, 0.25, 0.8125, 1.25, 0.5, 0.125, 0.0};
    std::vector<ConservedState> states;
    for (double z : grid.z) states.push_back({std::max(1.0 - z, 0.0), 0.0});

    std::vector<ConservedState> current = states;
    for (int n = 0; n < 25; ++n) {
        const double dt = cfl_timestep(current, grid, p);
        current = step(current, grid, dt, p).states;
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        CHECK(current[i].h == states[i].h);
        CHECK(current[i].q == states[i].q);
    }
}

TEST_CASE("telescoped momentum update equals the flux-difference form") {
    SchemeParams p;
    std::mt19937_64 rng(909);
    Grid1D grid = Grid1D::uniform(0.0, 6.0, 6, BoundaryPolicy::periodic);
    for (std::size_t i = 0; i < 6; ++i) grid.z[i] = 0.3 * testutil::draw_dz(rng);
    std::vector<ConservedState> states;
    for (int i = 0; i < 6; ++i) states.push_back(testutil::draw_state(rng, p.g, 0.0));

    const double dt = cfl_timestep(states, grid, p);
    const StepResult res = step(states, grid, dt, p);
    for (std::size_t i = 0; i < 6; ++i) {
        const InterfaceData& l = res.report.interfaces[i];
        const InterfaceData& r = res.report.interfaces[i + 1];
        const ConservedState ul = i == 0 ? res.report.ghost_left.state : states[i - 1];
        const ConservedState ur = i == 5 ? res.report.ghost_right.state : states[i + 1];
        const auto [fl_left, fl_right] = hr_interface_fluxes(l.rec, ul, states[i], p.g);
        const auto [fr_left, fr_right] = hr_interface_fluxes(r.rec, states[i], ur, p.g);
        (void)fl_left;
        (void)fr_right;
        const double sigma = res.report.sigma[i];
        const double q_direct = states[i].q - sigma * (fr_left.momentum - fl_right.momentum);
        const double scale = std::max({1.0, std::abs(states[i].q), states[i].h});
        CHECK(std::abs(res.states[i].q - q_direct) <= 1e-13 * scale);
    }
}

TEST_CASE("periodic runs conserve total mass to roundoff") {
    SchemeParams p;
    std::mt19937_64 rng(1010);
    const std::size_t n = 16;
    Grid1D grid = Grid1D::uniform(0.0, 4.0, n, BoundaryPolicy::periodic);
    for (std::size_t i = 0; i < n; ++i) grid.z[i] = 0.2 * testutil::draw_dz(rng);
    std::vector<ConservedState> states;
    for (std::size_t i = 0; i < n; ++i) states.push_back(testutil::draw_state(rng, p.g));

    auto total = [&](const std::vector<ConservedState>& s) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += s[i].h * grid.dx(i);
        return m;
    };
    const double m0 = total(states);
    for (int step_id = 0; step_id < 50; ++step_id) {
        const double dt = cfl_timestep(states, grid, p);
        states = step(states, grid, dt, p).states;
    }
    CHECK(std::abs(total(states) - m0) <= 1e-12 * m0);
}

TEST_CASE("boundary-corrected mass balance holds for open boundaries") {
    SchemeParams p;
    std::mt19937_64 rng(1111);
    const std::size_t n = 12;
    Grid1D grid = Grid1D::uniform(0.0, 3.0, n, BoundaryPolicy::outflow);
    std::vector<ConservedState> states;
    for (std::size_t i = 0; i < n; ++i) states.push_back(testutil::draw_state(rng, p.g));

    auto total = [&](const std::vector<ConservedState>& s) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += s[i].h * grid.dx(i);
        return m;
    };
    const double m0 = total(states);
    double influx = 0.0;
    for (int step_id = 0; step_id < 30; ++step_id) {
        const double dt = cfl_timestep(states, grid, p);
        const StepResult res = step(states, grid, dt, p);
        influx += dt * (res.report.interfaces.front().flux.mass -
                        res.report.interfaces.back().flux.mass);
        states = res.states;
    }
    CHECK(std::abs(total(states) - m0 - influx) <= 1e-12 * std::max(m0, 1.0));
}

TEST_CASE("a time step breaking the CFL condition is rejected") {
    SchemeParams p;
    Grid1D grid = Grid1D::uniform(0.0, 1.0, 4);
    const std::vector<ConservedState> states{{1.0, 2.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, -2.0}};
    CHECK_THROWS_WITH_AS(step(states, grid, 10.0, p), "CFL violated", std::runtime_error);
    CHECK_THROWS_AS(step(states, grid, 0.0, p), std::invalid_argument);
}
