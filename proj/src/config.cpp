#include "spiralspring/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spiralspring {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& text, int line, const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw std::invalid_argument("config line " + std::to_string(line) +
                                    ": invalid number for key '" + key + "': " + text);
    return v;
}

int parse_int(const std::string& text, int line, const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE || v < -1000000000L ||
        v > 1000000000L)
        throw std::invalid_argument("config line " + std::to_string(line) +
                                    ": invalid integer for key '" + key + "': " + text);
    return static_cast<int>(v);
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Material RunConfig::material() const {
    return {young_modulus_gpa * 1e9, density_kgm3, yield_strength_mpa * 1e6};
}

SpiralParams RunConfig::spiral() const {
    return {r0_mm * 1e-3, (r1_mm - r0_mm) * 1e-3, phi_max_deg * kDegToRad, width_mm * 1e-3};
}

double RunConfig::initial_thickness() const { return t0_mm * 1e-3; }

double RunConfig::t_min() const { return t_min_mm * 1e-3; }

LoadCase RunConfig::load() const { return {deflection_deg * kDegToRad}; }

SolverConfig RunConfig::solver_config() const {
    SolverConfig s;
    s.grid_n = grid_n;
    s.newton_tol = newton_tol;
    s.max_newton_iterations = max_newton_iterations;
    s.continuation_step = continuation_step_deg * kDegToRad;
    s.max_continuation_bisections = max_continuation_bisections;
    return s;
}

OptimizerConfig RunConfig::optimizer_config() const {
    OptimizerConfig o;
    o.c2 = c2;
    o.t_min = t_min();
    o.max_outer_iterations = max_iterations;
    o.improvement_tolerance = improvement_tol;
    o.c1_tolerance = c1_tol;
    return o;
}

SectionMode RunConfig::section_mode() const {
    if (!hollow_flange_fraction) return std::nullopt;
    return HollowFractions{*hollow_flange_fraction, *hollow_web_fraction};
}

CantileverCase RunConfig::cantilever_case() const {
    return {cantilever_force_n,          cantilever_length_mm * 1e-3,
            cantilever_width_mm * 1e-3,  cantilever_thickness_mm * 1e-3,
            t_min(),                     material()};
}

void RunConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) fail(msg);
    };
    auto positive = [&](double v, const char* key) {
        require(std::isfinite(v) && v > 0.0, std::string(key) + " must be finite and > 0");
    };

    positive(r0_mm, "r0_mm");
    positive(r1_mm, "r1_mm");
    require(r1_mm > r0_mm, "r1_mm must exceed r0_mm");
    positive(phi_max_deg, "phi_max_deg");
    positive(width_mm, "width_mm");
    positive(t0_mm, "t0_mm");
    positive(t_min_mm, "t_min_mm");
    require(t0_mm >= t_min_mm, "t0_mm is below the floor t_min_mm");
    positive(young_modulus_gpa, "young_modulus_gpa");
    positive(density_kgm3, "density_kgm3");
    positive(yield_strength_mpa, "yield_strength_mpa");
    require(yield_strength_mpa * 1e6 < young_modulus_gpa * 1e9,
            "yield_strength_mpa must be below young_modulus_gpa");
    require(std::isfinite(deflection_deg) && std::abs(deflection_deg) < phi_max_deg,
            "deflection_deg magnitude must be below phi_max_deg");
    require(grid_n >= 50, "grid_n must be >= 50");
    positive(newton_tol, "newton_tol");
    require(max_newton_iterations >= 1, "max_newton_iterations must be >= 1");
    positive(continuation_step_deg, "continuation_step_deg");
    require(max_continuation_bisections >= 0, "max_continuation_bisections must be >= 0");
    positive(c2, "c2");
    require(max_iterations >= 1, "max_iterations must be >= 1");
    positive(improvement_tol, "improvement_tol");
    positive(c1_tol, "c1_tol");
    require(sweep_points >= 2, "sweep_points must be >= 2");
    require(samples_per_node >= 1, "samples_per_node must be >= 1");
    require(hollow_flange_fraction.has_value() == hollow_web_fraction.has_value(),
            "hollow_flange_fraction and hollow_web_fraction must be given together");
    if (hollow_flange_fraction) {
        require(*hollow_flange_fraction > 0.0 && *hollow_flange_fraction <= 0.5,
                "hollow_flange_fraction must lie in (0, 0.5]");
        require(*hollow_web_fraction > 0.0 && *hollow_web_fraction <= 1.0,
                "hollow_web_fraction must lie in (0, 1]");
    }
    positive(cantilever_force_n, "cantilever_force_n");
    positive(cantilever_length_mm, "cantilever_length_mm");
    positive(cantilever_width_mm, "cantilever_width_mm");
    positive(cantilever_thickness_mm, "cantilever_thickness_mm");
}

RunConfig parse_config_text(const std::string& text, const std::string& source_name) {
    RunConfig cfg;

    std::map<std::string, std::function<void(const std::string&, int)>> setters;
    auto dbl = [&](const char* key, double& field) {
        setters[key] = [key, &field](const std::string& v, int line) {
            field = parse_double(v, line, key);
        };
    };
    auto integer = [&](const char* key, int& field) {
        setters[key] = [key, &field](const std::string& v, int line) {
            field = parse_int(v, line, key);
        };
    };
    auto opt_dbl = [&](const char* key, std::optional<double>& field) {
        setters[key] = [key, &field](const std::string& v, int line) {
            field = parse_double(v, line, key);
        };
    };

    dbl("r0_mm", cfg.r0_mm);
    dbl("r1_mm", cfg.r1_mm);
    dbl("phi_max_deg", cfg.phi_max_deg);
    dbl("width_mm", cfg.width_mm);
    dbl("t0_mm", cfg.t0_mm);
    dbl("t_min_mm", cfg.t_min_mm);
    dbl("young_modulus_gpa", cfg.young_modulus_gpa);
    dbl("density_kgm3", cfg.density_kgm3);
    dbl("yield_strength_mpa", cfg.yield_strength_mpa);
    dbl("deflection_deg", cfg.deflection_deg);
    integer("grid_n", cfg.grid_n);
    dbl("newton_tol", cfg.newton_tol);
    integer("max_newton_iterations", cfg.max_newton_iterations);
    dbl("continuation_step_deg", cfg.continuation_step_deg);
    integer("max_continuation_bisections", cfg.max_continuation_bisections);
    dbl("c2", cfg.c2);
    integer("max_iterations", cfg.max_iterations);
    dbl("improvement_tol", cfg.improvement_tol);
    dbl("c1_tol", cfg.c1_tol);
    integer("sweep_points", cfg.sweep_points);
    integer("samples_per_node", cfg.samples_per_node);
    opt_dbl("hollow_flange_fraction", cfg.hollow_flange_fraction);
    opt_dbl("hollow_web_fraction", cfg.hollow_web_fraction);
    dbl("cantilever_force_n", cfg.cantilever_force_n);
    dbl("cantilever_length_mm", cfg.cantilever_length_mm);
    dbl("cantilever_width_mm", cfg.cantilever_width_mm);
    dbl("cantilever_thickness_mm", cfg.cantilever_thickness_mm);

    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(source_name + " line " + std::to_string(line) +
                                        ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument(source_name + " line " + std::to_string(line) +
                                        ": expected 'key = value'");
        const auto it = setters.find(key);
        if (it == setters.end())
            throw std::invalid_argument(source_name + " line " + std::to_string(line) +
                                        ": unknown key '" + key + "'");
        if (!seen.insert(key).second)
            throw std::invalid_argument(source_name + " line " + std::to_string(line) +
                                        ": duplicate key '" + key + "'");
        it->second(value, line);
    }

    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    auto put = [&](const char* key, double v) { out << key << " = " << g17(v) << "\n"; };
    auto put_i = [&](const char* key, int v) { out << key << " = " << v << "\n"; };
    put("r0_mm", c.r0_mm);
    put("r1_mm", c.r1_mm);
    put("phi_max_deg", c.phi_max_deg);
    put("width_mm", c.width_mm);
    put("t0_mm", c.t0_mm);
    put("t_min_mm", c.t_min_mm);
    put("young_modulus_gpa", c.young_modulus_gpa);
    put("density_kgm3", c.density_kgm3);
    put("yield_strength_mpa", c.yield_strength_mpa);
    put("deflection_deg", c.deflection_deg);
    put_i("grid_n", c.grid_n);
    put("newton_tol", c.newton_tol);
    put_i("max_newton_iterations", c.max_newton_iterations);
    put("continuation_step_deg", c.continuation_step_deg);
    put_i("max_continuation_bisections", c.max_continuation_bisections);
    put("c2", c.c2);
    put_i("max_iterations", c.max_iterations);
    put("improvement_tol", c.improvement_tol);
    put("c1_tol", c.c1_tol);
    put_i("sweep_points", c.sweep_points);
    put_i("samples_per_node", c.samples_per_node);
    if (c.hollow_flange_fraction) put("hollow_flange_fraction", *c.hollow_flange_fraction);
    if (c.hollow_web_fraction) put("hollow_web_fraction", *c.hollow_web_fraction);
    put("cantilever_force_n", c.cantilever_force_n);
    put("cantilever_length_mm", c.cantilever_length_mm);
    put("cantilever_width_mm", c.cantilever_width_mm);
    put("cantilever_thickness_mm", c.cantilever_thickness_mm);
    return out.str();
}

}  // namespace spiralspring
