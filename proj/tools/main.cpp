#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kinsw/core.hpp"
#include "kinsw/entropy.hpp"
#include "kinsw/runner.hpp"
#include "kinsw/scenario.hpp"

namespace {

int cmd_run(const std::string& config, const std::string& out_dir, int audit_every,
            const std::vector<std::string>& overrides) {
    kinsw::Config cfg = kinsw::Config::parse_file(config);
    for (const std::string& s : overrides) cfg.set_override(s);
    kinsw::Scenario sc = kinsw::build_scenario(cfg);
    if (audit_every >= 0) sc.audit_every = audit_every;
    for (const std::string& key : cfg.unused_keys())
        std::fprintf(stderr, "warning: unused config key %s\n", key.c_str());

    const kinsw::RunSummary sum = kinsw::run(sc, out_dir);
    std::printf("scenario              %s\n", sum.scenario_name.c_str());
    std::printf("steps                 %ld\n", sum.steps);
    std::printf("t_final               %.12g s\n", sum.t_final);
    std::printf("mass residual         %.3e (relative, boundary corrected)\n",
                sum.conservation_residual);
    std::printf("min updated h         %.3e m\n", sum.min_h_updated);
    std::printf("audited steps         %ld\n", sum.audited_steps);
    std::printf("max dissipation D     %.3e\n", sum.max_dissipation);
    std::printf("empirical constant    %.6g\n", sum.empirical_constant);
    std::printf("entropy violations    %ld\n", sum.violations);
    if (!out_dir.empty()) std::printf("artifacts             %s\n", out_dir.c_str());
    if (!sum.audits_pass()) {
        std::fprintf(stderr, "error: %ld audited cells violate the entropy bound\n",
                     sum.violations);
        return 1;
    }
    return 0;
}

int cmd_refine(const std::string& config, int levels,
               const std::vector<std::string>& overrides) {
    kinsw::Config cfg = kinsw::Config::parse_file(config);
    for (const std::string& s : overrides) cfg.set_override(s);
    const kinsw::Scenario sc = kinsw::build_scenario(cfg);

    const std::vector<kinsw::RefinementRow> rows = kinsw::refinement_study(sc, levels);
    std::printf("%8s  %12s  %14s  %8s\n", "cells", "dx (m)", "violation", "order");
    bool bad = false;
    for (const kinsw::RefinementRow& row : rows) {
        if (row.flags > 0) bad = true;
        if (row.exact)
            std::printf("%8d  %12.6g  %14.6e  %8s\n", row.cells, row.dx, row.violation, "exact");
        else if (std::isnan(row.order))
            std::printf("%8d  %12.6g  %14.6e  %8s\n", row.cells, row.dx, row.violation, "-");
        else
            std::printf("%8d  %12.6g  %14.6e  %8.3f\n", row.cells, row.dx, row.violation,
                        row.order);
    }
    if (bad) {
        std::fprintf(stderr, "error: entropy bound violated on at least one level\n");
        return 1;
    }
    return 0;
}

int cmd_counterexample(double h_l, double u, double z_l, double z_r, int sigma_grid, double g,
                       double beta) {
    kinsw::SchemeParams p;
    p.g = g;
    p.beta = beta;
    const double h_r = h_l + z_l - z_r;
    // Reject bad states here so the header below never echoes them.
    if (h_l <= p.h_dry) throw std::invalid_argument("left state must be wet");
    if (h_r <= 0.0) throw std::invalid_argument("implied right height is not positive");
    const kinsw::ConservedState left{h_l, h_l * u};
    const kinsw::ConservedState right{h_r, h_r * u};
    const std::array<kinsw::ConservedState, 2> pair{left, right};
    const double v_m = kinsw::max_wave_speed(pair, p);
    const double sigma_max = p.beta / v_m;

    std::printf("left state  h=%.6g  u=%.6g  z=%.6g\n", h_l, u, z_l);
    std::printf("right state h=%.6g  u=%.6g  z=%.6g (same free surface)\n", h_r, u, z_r);
    std::printf("v_max %.6g, sigma_max %.6g\n\n", v_m, sigma_max);
    std::printf("%14s  %14s  %14s\n", "sigma", "D", "D/sigma");
    bool all_positive = true;
    for (int k = 0; k < sigma_grid; ++k) {
        const double sigma = sigma_max * std::pow(0.5, k);
        const kinsw::CounterexampleResult res = kinsw::counterexample_audit(h_l, u, z_l, z_r,
                                                                            sigma, p);
        if (!(res.dissipation > 0.0)) all_positive = false;
        std::printf("%14.6e  %14.6e  %14.6e\n", res.sigma, res.dissipation, res.rate);
    }
    std::printf("\nentropy production stays %s on this grid\n",
                all_positive ? "strictly positive" : "nonpositive somewhere");
    return all_positive ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D shallow water solver with kinetic entropy audits"};
    app.require_subcommand(1);

    std::string config, out_dir = "out";
    int audit_every = -1;
    std::vector<std::string> overrides;

    CLI::App* run = app.add_subcommand("run", "run a scenario and audit every step");
    run->add_option("config", config, "scenario config file")->required();
    run->add_option("--out", out_dir, "output directory (default: out)");
    run->add_option("--audit-every", audit_every, "audit cadence in steps; 0 disables");
    run->add_option("--set", overrides, "override, e.g. --set grid.cells=400");

    int levels = 4;
    CLI::App* refine = app.add_subcommand("refine", "refinement study of the entropy error");
    refine->add_option("config", config, "scenario config file")->required();
    refine->add_option("--levels", levels, "number of doublings (at least 3)")->required();
    refine->add_option("--set", overrides, "override, e.g. --set time.t_end=0.2");

    double h_l = 2.0, u = 1.0, z_l = 0.0, z_r = 1.0, g = 9.81, beta = 0.5;
    int sigma_grid = 12;
    CLI::App* cex = app.add_subcommand(
        "counterexample", "entropy production of a moving steady state over a bottom step");
    cex->add_option("--h-l", h_l, "left water height")->required();
    cex->add_option("--u", u, "common velocity (nonzero)")->required();
    cex->add_option("--z-l", z_l, "left bottom elevation")->required();
    cex->add_option("--z-r", z_r, "right bottom elevation (above the left)")->required();
    cex->add_option("--sigma-grid", sigma_grid, "number of sigma halvings (default 12)");
    cex->add_option("--g", g, "gravity (default 9.81)");
    cex->add_option("--beta", beta, "CFL fraction (default 0.5)");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(config, out_dir, audit_every, overrides);
        if (refine->parsed()) return cmd_refine(config, levels, overrides);
        return cmd_counterexample(h_l, u, z_l, z_r, sigma_grid, g, beta);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
