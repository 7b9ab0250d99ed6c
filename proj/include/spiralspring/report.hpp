#pragma once

#include <string>
#include <vector>

#include "spiralspring/analysis.hpp"
#include "spiralspring/config.hpp"
#include "spiralspring/optimizer.hpp"
#include "spiralspring/spiral.hpp"

namespace spiralspring {

// One named numeric result with its unit, e.g. {"total_energy", 4.09, "J"}.
struct ResultEntry {
    std::string name;
    double value;
    std::string unit;
};

// Renders the schema-versioned JSON run report. Deterministic: identical
// inputs yield identical bytes. The echoed config block round-trips through
// parse_config_text; the output directory is deliberately not part of it.
std::string render_report(const std::string& command, const RunConfig& config,
                          const std::vector<ResultEntry>& results,
                          const OptimizationHistory* history,
                          const std::vector<std::string>& warnings);

// CSV writers; all floats with 17 significant digits.
// fields.csv: s_m, t_m, moment_nm, theta_rad, x_m, y_m, sigma_pa, dudm_jkg
std::string render_fields_csv(const EnergyReport& report, const ThicknessProfile& profile,
                              const ElasticaSolution& sol);
// curve.csv: dphi_deg, torque_nm, energy_j
std::string render_curve_csv(const std::vector<SweepPoint>& points);
// history.csv: iter, density_jkg, max_stress_pa, fraction_at_09
std::string render_history_csv(const OptimizationHistory& history);
// cantilever.csv: x_m, moment_nm, t_opt_m, dudm_uniform_jkg, dudm_opt_jkg
std::string render_cantilever_csv(const CantileverCase& c, int samples);

// SVG 1.1 planform, user units = millimetres; two open polylines with matched
// sample indices (inner-edge, outer-edge).
std::string render_geometry_svg(const Outline& outline);

// Writes content to dir/name, creating dir if needed.
void write_file(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace spiralspring
