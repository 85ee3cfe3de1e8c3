#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "kinsw/entropy.hpp"
#include "testutil.hpp"

using namespace kinsw;

TEST_CASE("calibration chain hits the hand-checked values at beta one half") {
    CHECK(alpha_limit(0.5) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(dissipation_floor(0.3, 0.5) == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(dissipation_before_absorption(0.3, 0.5, 0.1) == doctest::Approx(0.245).epsilon(1e-14));

    const ConstantsChain chain = constants_chain(0.5);
    CHECK(chain.beta == 0.5);
    CHECK(chain.alpha == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(chain.c_min == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(chain.nu0 == doctest::Approx(dissipation_before_absorption(chain.alpha, chain.beta,
                                                                     chain.eps)).epsilon(1e-14));
    CHECK(chain.nu == doctest::Approx(0.5 * chain.nu0).epsilon(1e-14));
}

TEST_CASE("every chain member stays positive across the CFL range") {
    for (double beta : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const ConstantsChain chain = constants_chain(beta);
        CHECK(chain.alpha > 0.0);
        CHECK(chain.alpha < alpha_limit(beta));
        CHECK(chain.eps > 0.0);
        CHECK(chain.eps2 > 0.0);
        CHECK(chain.c_min > 0.0);
        CHECK(chain.nu0 > 0.0);
        CHECK(chain.nu > 0.0);
        CHECK(chain.nu < chain.nu0);
        CHECK(chain.c_err_kinetic > 0.0);
        CHECK(chain.c_err_macro > 0.0);
    }
    CHECK_THROWS_WITH_AS(constants_chain(0.0), "CFL fraction out of range", std::invalid_argument);
    CHECK_THROWS_WITH_AS(constants_chain(1.0), "CFL fraction out of range", std::invalid_argument);
}

TEST_CASE("per-node inequality residual is nonpositive up to the audit tolerance") {
    std::mt19937_64 rng(1616);
    for (double beta : {0.3, 0.9}) {
        SchemeParams p;
        p.beta = beta;
        const ConstantsChain chain = constants_chain(beta);
        int wet = 0;
        while (wet < 200) {
            const CellNeighborhood c = testutil::draw_neighborhood(rng, p);
            const double sigma = testutil::draw_sigma(rng, c, p);
            if (sigma <= 0.0) continue;
            ++wet;
            const KineticUpdate upd = kinetic_update(c, sigma, p);
            const KineticInequalityAudit audit = kinetic_inequality_residual(upd, chain, p);
            // worst comes back nondimensionalized and clamped at zero.
            CHECK(audit.worst <= p.quad_tol);
            CHECK(audit.scale > 0.0);
            double max_node = -1e300;
            for (double v : audit.violation) max_node = std::max(max_node, v);
            if (!audit.violation.empty())
                CHECK(audit.worst == std::max(max_node, 0.0) / audit.scale);
        }
    }
}

TEST_CASE("overshoot decomposition forms agree and weights respect their floors") {
    SchemeParams p;
    std::mt19937_64 rng(1717);
    const ConstantsChain chain = constants_chain(p.beta);
    int wet = 0;
    while (wet < 200) {
        const CellNeighborhood c = testutil::draw_neighborhood(rng, p);
        const double sigma = testutil::draw_sigma(rng, c, p);
        if (sigma <= 0.0) continue;
        ++wet;
        const KineticUpdate upd = kinetic_update(c, sigma, p);
        const ResidualDecomposition dec = residual_decomposition(upd, chain);
        CHECK(dec.worst_form_gap <= 1e-12);
        CHECK(dec.worst_weight_violation <= 1e-12);
        CHECK(dec.worst_remainder_gap <= 1e-12);
    }
}

TEST_CASE("semi-discrete audit bounds hold and its flux terms telescope") {
    SchemeParams p;
    std::mt19937_64 rng(1818);
    int wet = 0;
    while (wet < 200) {
        const CellNeighborhood c = testutil::draw_neighborhood(rng, p);
        if (c.center.h <= 0.0) continue;
        ++wet;
        const SemiDiscreteAudit audit = semi_discrete_audit(c, p);
        CHECK(audit.worst <= p.quad_tol);
        CHECK(audit.flux_identity_residual <= p.quad_tol * audit.scale);
        CHECK(audit.correction_right <= p.quad_tol * audit.scale);
        CHECK(audit.correction_left <= p.quad_tol * audit.scale);
    }
}

TEST_CASE("cell entropy balance of a flat dam break dissipates everywhere") {
    SchemeParams p;
    const std::size_t n = 24;
    Grid1D grid = Grid1D::uniform(-3.0, 3.0, n, BoundaryPolicy::outflow);
    std::vector<ConservedState> states;
    for (std::size_t i = 0; i < n; ++i) states.push_back({grid.center(i) < 0.0 ? 2.0 : 1.0, 0.0});
    const ConstantsChain chain = constants_chain(p.beta);

    for (int step_id = 0; step_id < 5; ++step_id) {
        const double dt = cfl_timestep(states, grid, p);
        const StepResult res = step(states, grid, dt, p);
        const EntropyAudit audit = macro_audit(states, res.states, res.report, grid, chain, p);
        CHECK(audit.flags.empty());
        CHECK(audit.max_dissipation <= p.quad_tol * audit.scale);
        states = res.states;
    }
}

TEST_CASE("cell entropy balance audit rejects a mismatched grid") {
    SchemeParams p;
    Grid1D grid = Grid1D::uniform(0.0, 1.0, 4);
    const std::vector<ConservedState> states(4, ConservedState{1.0, 0.0});
    const double dt = cfl_timestep(states, grid, p);
    const StepResult res = step(states, grid, dt, p);
    const Grid1D other = Grid1D::uniform(0.0, 1.0, 5);
    const std::vector<ConservedState> five(5, ConservedState{1.0, 0.0});
    const ConstantsChain chain = constants_chain(p.beta);
    CHECK_THROWS_WITH_AS(macro_audit(five, five, res.report, other, chain, p),
                         "step report does not match grid", std::invalid_argument);
}

TEST_CASE("a moving steady state over a step trips only the jump cell") {
    // Equal free surface and equal velocity across an upward step: exactly
    // well balanced at rest, provably not well balanced in motion. With the
    // error allowance removed the cell left of the step is the only one whose
    // balance turns positive; the full allowance absorbs it.
    SchemeParams p;
    p.g = 1.0;
    p.beta = 0.5;
    const double h_left = 2.0, u = 1.0, z_left = 0.0, z_right = 1.0;
    const double h_right = h_left + z_left - z_right;
    const std::size_t n = 8;
    Grid1D grid = Grid1D::uniform(0.0, 8.0, n, BoundaryPolicy::outflow);
    std::vector<ConservedState> states;
    for (std::size_t i = 0; i < n; ++i) {
        grid.z[i] = i < n / 2 ? z_left : z_right;
        const double h = i < n / 2 ? h_left : h_right;
        states.push_back({h, h * u});
    }
    const double dt = cfl_timestep(states, grid, p);
    const StepResult res = step(states, grid, dt, p);

    const ConstantsChain chain = constants_chain(p.beta);
    ConstantsChain bare = chain;
    bare.c_err_macro = 0.0;

    const EntropyAudit with_allowance = macro_audit(states, res.states, res.report, grid, chain, p);
    CHECK(with_allowance.flags.empty());

    const EntropyAudit without = macro_audit(states, res.states, res.report, grid, bare, p);
    REQUIRE(without.flags.size() == 1);
    CHECK(without.flags[0] == n / 2 - 1);
    CHECK(without.dissipation[n / 2 - 1] > 0.0);
    CHECK(without.empirical_constant > 0.0);
    CHECK(without.empirical_constant <= chain.c_err_macro);
}

TEST_CASE("step dissipation probe matches its closed small-sigma behavior") {
    // For g = 1, h_left = 2, u = 1 and an elevation step of 1 the update
    // leaves the velocity exact and the production reduces to
    // D = g sigma^2 u^2 dz^2 / 2, so the rate D/sigma vanishes linearly.
    SchemeParams p;
    p.g = 1.0;
    p.beta = 0.5;
    double previous_rate = 1e300;
    for (double sigma : {0.1, 0.05, 0.025}) {
        const CounterexampleResult r = counterexample_audit(2.0, 1.0, 0.0, 1.0, sigma, p);
        CHECK(r.dissipation > 0.0);
        CHECK(r.dissipation == doctest::Approx(0.5 * sigma * sigma).epsilon(1e-9));
        CHECK(std::abs(r.semi_residual) <= 1e-10);
        CHECK(r.rate < previous_rate);
        previous_rate = r.rate;
    }
}

TEST_CASE("step dissipation probe validates its inputs") {
    SchemeParams p;
    p.g = 1.0;
    CHECK_THROWS_AS(counterexample_audit(1.0, 1.0, 0.0, 2.0, 0.01, p), std::invalid_argument);
    CHECK_THROWS_AS(counterexample_audit(0.0, 1.0, 0.0, 0.5, 0.01, p), std::invalid_argument);
    CHECK_THROWS_WITH_AS(counterexample_audit(2.0, 1.0, 0.0, 1.0, 10.0, p), "CFL violated",
                         std::runtime_error);
}

TEST_CASE("quadratic transport bounds hold for random state triples") {
    SchemeParams p;
    std::mt19937_64 rng(1919);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        auto draw = [&]() -> PrimitiveState {
            const double h = 0.02 + 4.0 * unit(rng);
            return {h, testutil::draw_velocity(rng, p.g, h)};
        };
        const PrimitiveState s1 = draw(), s2 = draw(), s3 = draw();
        const LipschitzAudit audit = lipschitz_audit(s1, s2, s3, p);
        CHECK(audit.pair_lhs <= audit.pair_rhs + p.quad_tol * audit.scale);
        CHECK(audit.triple_lhs <= audit.triple_rhs + p.quad_tol * audit.scale);
        CHECK(audit.pair_lhs >= 0.0);
        CHECK(audit.triple_lhs >= 0.0);
    }
}

TEST_CASE("flat-topography audits hold and require flat elevations") {
    SchemeParams p;
    std::mt19937_64 rng(2020);
    int wet = 0;
    while (wet < 200) {
        CellNeighborhood c = testutil::draw_neighborhood(rng, p);
        c.z_left = c.z_center = c.z_right = 0.25;
        const ConservedState tri[] = {c.left, c.center, c.right};
        const double vm = max_wave_speed(tri, p);
        if (vm <= 0.0) continue;
        ++wet;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double sigma = unit(rng) / vm;
        const NoTopoAudit audit = no_topo_audit(c, sigma, p);
        CHECK(audit.worst <= p.quad_tol);
        CHECK(audit.projection_violation <= p.quad_tol * audit.scale);
    }

    CellNeighborhood sloped;
    sloped.left = sloped.center = sloped.right = {1.0, 0.0};
    sloped.z_right = 0.5;
    CHECK_THROWS_WITH_AS(no_topo_audit(sloped, 0.1, p), "flat topography required",
                         std::invalid_argument);
}
