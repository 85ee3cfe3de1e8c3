#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "kinsw/grid.hpp"

namespace kinsw {

// INI-style configuration: [section] headers over key = value lines, with
// '#' or ';' comments. Keys live in their section; values stay strings until
// a typed getter asks for them. Parse and lookup errors carry the file name,
// the line number where applicable, and the offending key.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse(std::istream& in, const std::string& name);

    // Applies one command-line override of the form "section.key=value".
    void set_override(const std::string& assignment);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    std::string require_string(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    double require_double(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;

    // Keys that were never read; lets the CLI warn about typos.
    std::vector<std::string> unused_keys() const;

    const std::string& name() const { return name_; }

  private:
    std::string name_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
    mutable std::map<std::string, bool> touched_;

    const std::string* find(const std::string& section, const std::string& key) const;
};

// Piecewise-linear tabulated profile, used for tabulated topography and
// initial data. Points come sorted by x; evaluation clamps beyond the ends.
struct TableProfile {
    std::vector<double> x;
    std::vector<double> value;

    double operator()(double xq) const;
};

// Topography shape. `kind` decides which fields matter. `lipschitz` tells the
// refinement study whether the shape stays smooth under refinement; tabulated
// profiles do not qualify.
struct TopographySpec {
    enum class Kind { flat, bump, linear, table } kind = Kind::flat;
    double level = 0.0;                    // flat
    double center = 0.0, height = 0.0, width = 1.0; // bump: height*exp(-((x-center)/width)^2)
    double slope = 0.0;                    // linear: slope * x
    TableProfile table;

    double operator()(double x) const;
    bool lipschitz() const { return kind != Kind::table; }
};

// Initial condition shape. moving_false_equilibrium also dictates the
// topography (a single bottom step), so it carries its own elevations.
struct InitialSpec {
    enum class Kind { lake_at_rest, dam_break, moving_false_equilibrium, table } kind =
        Kind::lake_at_rest;
    double surface = 1.0;                         // lake_at_rest
    double h_left = 1.0, h_right = 1.0;           // dam_break
    double u_left = 0.0, u_right = 0.0;           // dam_break
    double x_jump = 0.0;                          // dam_break / moving_false_equilibrium
    double h_jump = 1.0, u_jump = 1.0;            // moving_false_equilibrium left state
    double z_left = 0.0, z_right = 0.0;           // moving_false_equilibrium step
    TableProfile h_table, u_table;                // table
};

// A fully specified simulation: mesh, bottom, initial data, physics, time
// horizon and audit cadence.
struct Scenario {
    std::string name = "run";
    double x_min = 0.0, x_max = 1.0;
    int cells = 100;
    TopographySpec topography;
    InitialSpec initial;
    BoundaryPolicy boundary = BoundaryPolicy::outflow;
    SchemeParams params;
    double t_end = 1.0;
    int max_steps = 10'000'000;
    int outputs = 2;                   // evenly spaced state snapshots, ends included
    std::vector<double> output_times;  // explicit override of the snapshot times
    int audit_every = 1;               // audit cadence in steps; 0 disables

    // Materialize the mesh and the initial states. Throws on inconsistent
    // specs, e.g. a false-equilibrium setup whose implied right height is
    // not positive.
    Grid1D make_grid() const;
    std::vector<ConservedState> make_initial(const Grid1D& grid) const;

    void validate() const;
};

// Builds a scenario from a parsed config. Unknown enum values and
// inconsistent combinations throw with the section and key named.
Scenario build_scenario(const Config& cfg);

} // namespace kinsw
