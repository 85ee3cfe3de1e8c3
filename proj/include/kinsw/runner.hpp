#pragma once

#include <string>
#include <vector>

#include "kinsw/entropy.hpp"
#include "kinsw/scenario.hpp"

namespace kinsw {

// Outcome of one simulation. The entropy counters cover the audited steps
// only (cadence per Scenario::audit_every); the mass accounting covers every
// step and is corrected by the net boundary influx, so the residual is a
// roundoff measure for all boundary policies.
struct RunSummary {
    std::string scenario_name;
    long steps = 0;
    double t_final = 0.0;
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double boundary_net_influx = 0.0;
    double conservation_residual = 0.0; // |M_f - M_0 - influx| / max(M_0, eps)
    double min_h_updated = 0.0;         // smallest updated height before dry fixes
    double max_dissipation = 0.0;       // largest audited D_i
    double sum_positive_dissipation = 0.0; // time integral of the positive entropy
                                           // production, sum over audited steps of
                                           // sum_i dx * max(D_i, 0)
    long audited_steps = 0;
    long violations = 0;                // audit flags; zero on a passing run
    double empirical_constant = 0.0;    // observed sup D_i / error denominator

    bool audits_pass() const { return violations == 0; }
};

// Runs the scenario and writes states.csv, audit.jsonl and summary.json into
// out_dir (created if missing). With an empty out_dir nothing is written.
// All numbers are printed with enough digits to round-trip, so identical
// configs produce bit-identical artifacts. Throws on CFL failures, on
// filesystem errors and when max_steps is exhausted before t_end.
RunSummary run(const Scenario& sc, const std::string& out_dir);

// One resolution level of a refinement study.
struct RefinementRow {
    int cells = 0;
    double dx = 0.0;
    double violation = 0.0; // time-averaged positive entropy production rate
    double order = 0.0;     // log2(previous violation / this one); NaN on row 0
    bool exact = false;     // violation at the audit tolerance floor
    long flags = 0;         // audited entropy-bound violations at this level
};

// Runs `levels` copies of the scenario, doubling the cell count each time,
// auditing every step, and reports the decay of the integrated positive
// entropy production. Requires at least 3 levels and a topography that stays
// Lipschitz under refinement (tabulated profiles and bottom steps do not).
std::vector<RefinementRow> refinement_study(const Scenario& base, int levels);

} // namespace kinsw
