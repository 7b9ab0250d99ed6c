#pragma once

#include <optional>
#include <string>

#include "spiralspring/analysis.hpp"
#include "spiralspring/cantilever.hpp"
#include "spiralspring/elastica.hpp"
#include "spiralspring/material.hpp"
#include "spiralspring/optimizer.hpp"
#include "spiralspring/types.hpp"

namespace spiralspring {

// Full run configuration in surface units (mm / deg / GPa / MPa), exactly as
// the key=value config file states them. Converted to SI on demand so that a
// re-parsed echo reproduces bit-identical internal values. Defaults are the
// reference spring dimensions.
struct RunConfig {
    // Geometry
    double r0_mm = 27.0;
    double r1_mm = 70.5;
    double phi_max_deg = 630.0;
    double width_mm = 20.0;
    double t0_mm = 7.0;
    double t_min_mm = 1.0;

    // Material
    double young_modulus_gpa = 3.0;
    double density_kgm3 = 1200.0;
    double yield_strength_mpa = 41.0;

    // Load
    double deflection_deg = 90.0;

    // Solver
    int grid_n = 400;
    double newton_tol = 1e-10;
    int max_newton_iterations = 40;
    double continuation_step_deg = 5.0;
    int max_continuation_bisections = 12;

    // Optimizer
    double c2 = 0.5;
    int max_iterations = 10;
    double improvement_tol = 1e-3;
    double c1_tol = 1e-3;

    // Output sampling
    int sweep_points = 20;
    int samples_per_node = 4;

    // Optional hollow-section estimate (both keys or neither)
    std::optional<double> hollow_flange_fraction;
    std::optional<double> hollow_web_fraction;

    // Cantilever oracle subcommand
    double cantilever_force_n = 10.0;
    double cantilever_length_mm = 100.0;
    double cantilever_width_mm = 20.0;
    double cantilever_thickness_mm = 5.0;

    // ----- SI views -----
    Material material() const;
    SpiralParams spiral() const;
    double initial_thickness() const;  // m
    double t_min() const;              // m
    LoadCase load() const;
    SolverConfig solver_config() const;
    OptimizerConfig optimizer_config() const;
    SectionMode section_mode() const;
    CantileverCase cantilever_case() const;

    // Cross-field validation (ranges, t0 >= t_min, |twist| < phi_max, hollow
    // pair completeness). Throws std::invalid_argument naming key and bound.
    void validate() const;
};

// Parses the documented key=value format ('#' comments, blank lines allowed).
// Missing keys keep their defaults; unknown or duplicate keys and malformed
// numbers are reported with their line number. The parsed config is validated.
RunConfig parse_config_text(const std::string& text, const std::string& source_name = "config");
RunConfig parse_config(const std::string& path);

// Canonical key=value echo; parse_config_text(serialize_config(c)) reproduces
// every field bit-identically.
std::string serialize_config(const RunConfig& config);

}  // namespace spiralspring
