#include "kinsw/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include "kinsw/hr.hpp"

namespace kinsw {

namespace {

// Shortest text that round-trips a double; keeps artifacts bit-identical
// across reruns without printing 17 digits for simple values.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shorter form when it round-trips
    char shorter[40];
    for (int prec = 1; prec < 17; ++prec) {
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

// Compensated accumulator for the mass bookkeeping.
struct KahanSum {
    double sum = 0.0, carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double total_mass(std::span<const ConservedState> states, const Grid1D& grid) {
    KahanSum m;
    for (std::size_t i = 0; i < states.size(); ++i) m.add(grid.dx(i) * states[i].h);
    return m.sum;
}

struct Artifacts {
    std::ofstream states;
    std::ofstream audits;
    std::string summary_path;
    bool active = false;
};

void write_snapshot(Artifacts& art, double t, const Grid1D& grid,
                    std::span<const ConservedState> states, const SchemeParams& p) {
    if (!art.active) return;
    for (std::size_t i = 0; i < states.size(); ++i) {
        art.states << fmt(t) << ',' << fmt(grid.center(i)) << ',' << fmt(states[i].h) << ','
                   << fmt(velocity(states[i], p)) << ',' << fmt(grid.z[i]) << '\n';
    }
}

std::vector<double> snapshot_times(const Scenario& sc) {
    std::vector<double> times = sc.output_times;
    if (times.empty()) {
        if (sc.outputs == 1) {
            times.push_back(sc.t_end);
        } else {
            for (int k = 0; k < sc.outputs; ++k)
                times.push_back(sc.t_end * static_cast<double>(k) /
                                static_cast<double>(sc.outputs - 1));
        }
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

} // namespace

RunSummary run(const Scenario& sc, const std::string& out_dir) {
    sc.validate();
    const SchemeParams& p = sc.params;
    const Grid1D grid = sc.make_grid();
    std::vector<ConservedState> states = sc.make_initial(grid);
    const ConstantsChain chain = constants_chain(p.beta);

    Artifacts art;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        art.states.open(out_dir + "/states.csv");
        art.audits.open(out_dir + "/audit.jsonl");
        art.summary_path = out_dir + "/summary.json";
        if (!art.states || !art.audits)
            throw std::runtime_error("cannot write into output directory: " + out_dir);
        art.states << "t (s),x (m),h (m),u (m/s),z (m)\n";
        art.active = true;
    }

    RunSummary sum;
    sum.scenario_name = sc.name;
    sum.mass_initial = total_mass(states, grid);
    sum.min_h_updated = std::numeric_limits<double>::infinity();

    const std::vector<double> times = snapshot_times(sc);
    std::size_t ti = 0;
    while (ti < times.size() && times[ti] <= 0.0) {
        write_snapshot(art, times[ti], grid, states, p);
        ++ti;
    }

    KahanSum influx;
    double t = 0.0;
    const double t_tiny = 1e-14 * sc.t_end;
    while (sc.t_end - t > t_tiny) {
        if (sum.steps >= sc.max_steps)
            throw std::runtime_error("step limit exceeded before reaching end time");

        double barrier = ti < times.size() ? times[ti] : sc.t_end;
        if (barrier <= t) barrier = sc.t_end;
        const double dt_cfl = cfl_timestep(states, grid, p);
        const bool clipped = !(t + dt_cfl < barrier);
        const double dt = clipped ? barrier - t : dt_cfl;

        StepResult res = step(states, grid, dt, p);
        const std::size_t n = grid.n_cells();
        influx.add(dt * (res.report.interfaces[0].flux.mass -
                         res.report.interfaces[n].flux.mass));
        sum.min_h_updated = std::min(sum.min_h_updated, res.report.min_h_updated);

        if (sc.audit_every > 0 && sum.steps % sc.audit_every == 0) {
            const EntropyAudit audit =
                macro_audit(states, res.states, res.report, grid, chain, p);
            ++sum.audited_steps;
            sum.violations += static_cast<long>(audit.flags.size());
            sum.max_dissipation = std::max(sum.max_dissipation, audit.max_dissipation);
            sum.sum_positive_dissipation += audit.sum_positive;
            sum.empirical_constant = std::max(sum.empirical_constant, audit.empirical_constant);
            if (art.active) {
                art.audits << "{\"step\":" << sum.steps << ",\"t\":" << fmt(clipped ? barrier : t + dt)
                           << ",\"dt\":" << fmt(dt) << ",\"max_dissipation\":"
                           << fmt(audit.max_dissipation) << ",\"flags\":" << audit.flags.size()
                           << ",\"sum_positive_rate\":" << fmt(audit.sum_positive / dt)
                           << ",\"empirical_constant\":" << fmt(audit.empirical_constant)
                           << "}\n";
            }
        }

        states = std::move(res.states);
        t = clipped ? barrier : t + dt;
        ++sum.steps;

        while (ti < times.size() && t >= times[ti] - t_tiny) {
            write_snapshot(art, times[ti], grid, states, p);
            ++ti;
        }
    }

    sum.t_final = t;
    sum.mass_final = total_mass(states, grid);
    sum.boundary_net_influx = influx.sum;
    sum.conservation_residual =
        std::abs(sum.mass_final - sum.mass_initial - sum.boundary_net_influx) /
        std::max(sum.mass_initial, 1e-300);
    if (!std::isfinite(sum.min_h_updated)) sum.min_h_updated = 0.0;

    if (art.active) {
        std::ofstream js(art.summary_path);
        if (!js) throw std::runtime_error("cannot write summary: " + art.summary_path);
        js << "{\n"
           << "  \"scenario\": \"" << sum.scenario_name << "\",\n"
           << "  \"steps\": " << sum.steps << ",\n"
           << "  \"t_final\": " << fmt(sum.t_final) << ",\n"
           << "  \"mass_initial\": " << fmt(sum.mass_initial) << ",\n"
           << "  \"mass_final\": " << fmt(sum.mass_final) << ",\n"
           << "  \"boundary_net_influx\": " << fmt(sum.boundary_net_influx) << ",\n"
           << "  \"conservation_residual\": " << fmt(sum.conservation_residual) << ",\n"
           << "  \"min_h_updated\": " << fmt(sum.min_h_updated) << ",\n"
           << "  \"max_dissipation\": " << fmt(sum.max_dissipation) << ",\n"
           << "  \"sum_positive_dissipation\": " << fmt(sum.sum_positive_dissipation) << ",\n"
           << "  \"audited_steps\": " << sum.audited_steps << ",\n"
           << "  \"violations\": " << sum.violations << ",\n"
           << "  \"empirical_constant\": " << fmt(sum.empirical_constant) << "\n"
           << "}\n";
    }
    return sum;
}

std::vector<RefinementRow> refinement_study(const Scenario& base, int levels) {
    if (levels < 3) throw std::invalid_argument("refinement study needs at least 3 levels");
    if (!base.topography.lipschitz() ||
        base.initial.kind == InitialSpec::Kind::moving_false_equilibrium)
        throw std::runtime_error("refinement study requires Lipschitz topography");

    std::vector<RefinementRow> rows;
    for (int level = 0; level < levels; ++level) {
        Scenario sc = base;
        sc.cells = base.cells << level;
        sc.audit_every = 1;
        sc.output_times = {base.t_end}; // refinement levels keep artifacts off anyway
        const RunSummary sum = run(sc, "");

        RefinementRow row;
        row.cells = sc.cells;
        row.dx = (sc.x_max - sc.x_min) / sc.cells;
        // Time-averaged positive entropy production rate. The per-cell error
        // allowance scales like dz^2 ~ dx^2, so this average is O(dx).
        row.violation = sum.sum_positive_dissipation / std::max(sum.t_final, 1e-300);
        row.flags = sum.violations;
        row.exact = row.violation <= sc.params.quad_tol;
        if (rows.empty() || row.exact || rows.back().exact)
            row.order = std::numeric_limits<double>::quiet_NaN();
        else
            row.order = std::log2(rows.back().violation / row.violation);
        rows.push_back(row);
    }
    return rows;
}

} // namespace kinsw
