#include "kinsw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kinsw {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& s) {
    const auto pos = s.find_first_of("#;");
    return pos == std::string::npos ? s : s.substr(0, pos);
}

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& what) {
    throw std::runtime_error("config parse error at " + name + ":" + std::to_string(line) +
                             ": " + what);
}

double to_double(const std::string& section, const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw std::runtime_error("value for [" + section + "] " + key +
                                 " is not a number: '" + value + "'");
    return v;
}

std::vector<double> to_double_list(const std::string& section, const std::string& key,
                                   const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(to_double(section, key, item));
    }
    return out;
}

// Tables are written as "x0:v0, x1:v1, ..." on one line.
TableProfile to_table(const std::string& section, const std::string& key,
                      const std::string& value) {
    TableProfile t;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("value for [" + section + "] " + key +
                                     " must be a list of x:value pairs");
        t.x.push_back(to_double(section, key, trim(item.substr(0, colon))));
        t.value.push_back(to_double(section, key, trim(item.substr(colon + 1))));
    }
    if (t.x.empty())
        throw std::runtime_error("value for [" + section + "] " + key + " has no points");
    for (std::size_t i = 1; i < t.x.size(); ++i)
        if (!(t.x[i] > t.x[i - 1]))
            throw std::runtime_error("table x values for [" + section + "] " + key +
                                     " must be strictly increasing");
    return t;
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse(in, path);
}

Config Config::parse(std::istream& in, const std::string& name) {
    Config cfg;
    cfg.name_ = name;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                parse_fail(name, line_no, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) parse_fail(name, line_no, "empty section name");
            cfg.sections_[section]; // section may stay empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            parse_fail(name, line_no, "expected '[section]' or 'key = value'");
        if (section.empty()) parse_fail(name, line_no, "key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) parse_fail(name, line_no, "empty key");
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

void Config::set_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq || dot == 0)
        throw std::runtime_error("override must look like section.key=value: '" + assignment + "'");
    const std::string section = trim(assignment.substr(0, dot));
    const std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
    if (section.empty() || key.empty())
        throw std::runtime_error("override must look like section.key=value: '" + assignment + "'");
    sections_[section][key] = trim(assignment.substr(eq + 1));
}

const std::string* Config::find(const std::string& section, const std::string& key) const {
    const auto sec = sections_.find(section);
    if (sec == sections_.end()) return nullptr;
    const auto it = sec->second.find(key);
    if (it == sec->second.end()) return nullptr;
    touched_[section + "." + key] = true;
    return &it->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    const std::string* v = find(section, key);
    return v ? *v : fallback;
}

std::string Config::require_string(const std::string& section, const std::string& key) const {
    const std::string* v = find(section, key);
    if (!v)
        throw std::runtime_error(name_ + ": missing required key [" + section + "] " + key);
    return *v;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    const std::string* v = find(section, key);
    return v ? to_double(section, key, *v) : fallback;
}

double Config::require_double(const std::string& section, const std::string& key) const {
    return to_double(section, key, require_string(section, key));
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
    const std::string* v = find(section, key);
    if (!v) return fallback;
    const double d = to_double(section, key, *v);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw std::runtime_error("value for [" + section + "] " + key +
                                 " is not an integer: '" + *v + "'");
    return i;
}

std::vector<std::string> Config::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [section, keys] : sections_)
        for (const auto& [key, value] : keys) {
            const std::string id = section + "." + key;
            if (!touched_.count(id)) out.push_back(id);
        }
    return out;
}

double TableProfile::operator()(double xq) const {
    if (x.empty()) return 0.0;
    if (xq <= x.front()) return value.front();
    if (xq >= x.back()) return value.back();
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    const double w = (xq - x[i - 1]) / (x[i] - x[i - 1]);
    return value[i - 1] + w * (value[i] - value[i - 1]);
}

double TopographySpec::operator()(double x) const {
    switch (kind) {
        case Kind::flat: return level;
        case Kind::bump: {
            const double r = (x - center) / width;
            return height * std::exp(-r * r);
        }
        case Kind::linear: return slope * x;
        case Kind::table: return table(x);
    }
    return 0.0;
}

Grid1D Scenario::make_grid() const {
    Grid1D grid = Grid1D::uniform(x_min, x_max, static_cast<std::size_t>(cells), boundary);
    if (initial.kind == InitialSpec::Kind::moving_false_equilibrium) {
        for (std::size_t i = 0; i < grid.n_cells(); ++i)
            grid.z[i] = grid.center(i) < initial.x_jump ? initial.z_left : initial.z_right;
    } else {
        for (std::size_t i = 0; i < grid.n_cells(); ++i) grid.z[i] = topography(grid.center(i));
    }
    return grid;
}

std::vector<ConservedState> Scenario::make_initial(const Grid1D& grid) const {
    std::vector<ConservedState> states(grid.n_cells());
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
        const double x = grid.center(i);
        double h = 0.0, u = 0.0;
        switch (initial.kind) {
            case InitialSpec::Kind::lake_at_rest:
                h = std::max(initial.surface - grid.z[i], 0.0);
                u = 0.0;
                break;
            case InitialSpec::Kind::dam_break:
                h = x < initial.x_jump ? initial.h_left : initial.h_right;
                u = x < initial.x_jump ? initial.u_left : initial.u_right;
                break;
            case InitialSpec::Kind::moving_false_equilibrium: {
                const double h_right = initial.h_jump + initial.z_left - initial.z_right;
                h = x < initial.x_jump ? initial.h_jump : h_right;
                u = initial.u_jump;
                break;
            }
            case InitialSpec::Kind::table:
                h = std::max(initial.h_table(x), 0.0);
                u = initial.u_table(x);
                break;
        }
        states[i] = dry_fix({h, h * u}, params);
    }
    return states;
}

void Scenario::validate() const {
    params.validate();
    if (!(x_max > x_min)) throw std::invalid_argument("domain must have positive length");
    if (cells < 4) throw std::invalid_argument("cell count must be at least 4");
    if (!(t_end > 0.0)) throw std::invalid_argument("end time must be positive");
    if (max_steps < 1) throw std::invalid_argument("step limit must be positive");
    if (outputs < 1) throw std::invalid_argument("output count must be positive");
    if (audit_every < 0) throw std::invalid_argument("audit cadence must be nonnegative");
    for (double t : output_times)
        if (!(t >= 0.0) || !(t <= t_end))
            throw std::invalid_argument("output times must lie within [0, t_end]");
    if (initial.kind == InitialSpec::Kind::moving_false_equilibrium) {
        if (initial.u_jump == 0.0)
            throw std::invalid_argument("false equilibrium needs a nonzero velocity");
        if (!(initial.z_right > initial.z_left))
            throw std::invalid_argument("false equilibrium needs an upward elevation step");
        if (!(initial.h_jump + initial.z_left - initial.z_right > 0.0))
            throw std::invalid_argument("implied right height is not positive");
        if (topography.kind != TopographySpec::Kind::flat || topography.level != 0.0)
            throw std::invalid_argument(
                "false equilibrium defines its own topography; remove the topography section");
    }
    if (initial.kind == InitialSpec::Kind::dam_break) {
        if (initial.h_left < 0.0 || initial.h_right < 0.0)
            throw std::invalid_argument("dam break heights must be nonnegative");
    }
}

Scenario build_scenario(const Config& cfg) {
    Scenario sc;
    sc.name = cfg.get_string("scenario", "name", "run");

    const std::string boundary = cfg.get_string("scenario", "boundary", "outflow");
    if (boundary == "periodic") sc.boundary = BoundaryPolicy::periodic;
    else if (boundary == "reflective") sc.boundary = BoundaryPolicy::reflective;
    else if (boundary == "outflow") sc.boundary = BoundaryPolicy::outflow;
    else throw std::runtime_error("unknown boundary policy '" + boundary + "'");

    sc.x_min = cfg.get_double("grid", "x_min", 0.0);
    sc.x_max = cfg.get_double("grid", "x_max", 1.0);
    sc.cells = cfg.get_int("grid", "cells", 100);
    const double x_mid = 0.5 * (sc.x_min + sc.x_max);

    sc.params.g = cfg.get_double("physics", "gravity", sc.params.g);
    sc.params.beta = cfg.get_double("physics", "beta", sc.params.beta);
    sc.params.h_dry = cfg.get_double("physics", "h_dry", sc.params.h_dry);
    sc.params.quad_nodes = cfg.get_int("physics", "quad_nodes", sc.params.quad_nodes);
    sc.params.quad_tol = cfg.get_double("audit", "tolerance", sc.params.quad_tol);

    const std::string topo = cfg.get_string("topography", "kind", "flat");
    if (topo == "flat") {
        sc.topography.kind = TopographySpec::Kind::flat;
        sc.topography.level = cfg.get_double("topography", "level", 0.0);
    } else if (topo == "bump") {
        sc.topography.kind = TopographySpec::Kind::bump;
        sc.topography.center = cfg.get_double("topography", "center", x_mid);
        sc.topography.height = cfg.require_double("topography", "height");
        sc.topography.width = cfg.require_double("topography", "width");
        if (!(sc.topography.width > 0.0))
            throw std::runtime_error("bump width must be positive");
    } else if (topo == "linear") {
        sc.topography.kind = TopographySpec::Kind::linear;
        sc.topography.slope = cfg.require_double("topography", "slope");
    } else if (topo == "table") {
        sc.topography.kind = TopographySpec::Kind::table;
        sc.topography.table =
            to_table("topography", "points", cfg.require_string("topography", "points"));
    } else {
        throw std::runtime_error("unknown topography kind '" + topo + "'");
    }

    const std::string init = cfg.get_string("initial", "kind", "lake_at_rest");
    if (init == "lake_at_rest") {
        sc.initial.kind = InitialSpec::Kind::lake_at_rest;
        sc.initial.surface = cfg.require_double("initial", "surface");
    } else if (init == "dam_break") {
        sc.initial.kind = InitialSpec::Kind::dam_break;
        sc.initial.h_left = cfg.require_double("initial", "h_left");
        sc.initial.h_right = cfg.require_double("initial", "h_right");
        sc.initial.u_left = cfg.get_double("initial", "u_left", 0.0);
        sc.initial.u_right = cfg.get_double("initial", "u_right", 0.0);
        sc.initial.x_jump = cfg.get_double("initial", "x_jump", x_mid);
    } else if (init == "moving_false_equilibrium") {
        sc.initial.kind = InitialSpec::Kind::moving_false_equilibrium;
        sc.initial.h_jump = cfg.require_double("initial", "h_left");
        sc.initial.u_jump = cfg.require_double("initial", "u");
        sc.initial.z_left = cfg.get_double("initial", "z_left", 0.0);
        sc.initial.z_right = cfg.require_double("initial", "z_right");
        sc.initial.x_jump = cfg.get_double("initial", "x_jump", x_mid);
    } else if (init == "table") {
        sc.initial.kind = InitialSpec::Kind::table;
        sc.initial.h_table = to_table("initial", "points_h", cfg.require_string("initial", "points_h"));
        if (cfg.has("initial", "points_u"))
            sc.initial.u_table =
                to_table("initial", "points_u", cfg.require_string("initial", "points_u"));
    } else {
        throw std::runtime_error("unknown initial condition kind '" + init + "'");
    }

    sc.t_end = cfg.get_double("time", "t_end", 1.0);
    sc.max_steps = cfg.get_int("time", "max_steps", sc.max_steps);
    sc.outputs = cfg.get_int("time", "outputs", sc.outputs);
    if (cfg.has("time", "output_times"))
        sc.output_times =
            to_double_list("time", "output_times", cfg.require_string("time", "output_times"));

    sc.audit_every = cfg.get_int("audit", "every", 1);

    sc.validate();
    return sc;
}

} // namespace kinsw
