#include "spiralspring/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "spiralspring/cantilever.hpp"

namespace spiralspring {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string mm6(double metres) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", metres * 1e3);
    return buf;
}

nlohmann::ordered_json config_echo(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["r0_mm"] = c.r0_mm;
    j["r1_mm"] = c.r1_mm;
    j["phi_max_deg"] = c.phi_max_deg;
    j["width_mm"] = c.width_mm;
    j["t0_mm"] = c.t0_mm;
    j["t_min_mm"] = c.t_min_mm;
    j["young_modulus_gpa"] = c.young_modulus_gpa;
    j["density_kgm3"] = c.density_kgm3;
    j["yield_strength_mpa"] = c.yield_strength_mpa;
    j["deflection_deg"] = c.deflection_deg;
    j["grid_n"] = c.grid_n;
    j["newton_tol"] = c.newton_tol;
    j["max_newton_iterations"] = c.max_newton_iterations;
    j["continuation_step_deg"] = c.continuation_step_deg;
    j["max_continuation_bisections"] = c.max_continuation_bisections;
    j["c2"] = c.c2;
    j["max_iterations"] = c.max_iterations;
    j["improvement_tol"] = c.improvement_tol;
    j["c1_tol"] = c.c1_tol;
    j["sweep_points"] = c.sweep_points;
    j["samples_per_node"] = c.samples_per_node;
    if (c.hollow_flange_fraction) j["hollow_flange_fraction"] = *c.hollow_flange_fraction;
    if (c.hollow_web_fraction) j["hollow_web_fraction"] = *c.hollow_web_fraction;
    j["cantilever_force_n"] = c.cantilever_force_n;
    j["cantilever_length_mm"] = c.cantilever_length_mm;
    j["cantilever_width_mm"] = c.cantilever_width_mm;
    j["cantilever_thickness_mm"] = c.cantilever_thickness_mm;
    return j;
}

}  // namespace

std::string render_report(const std::string& command, const RunConfig& config,
                          const std::vector<ResultEntry>& results,
                          const OptimizationHistory* history,
                          const std::vector<std::string>& warnings) {
    nlohmann::ordered_json j;
    j["schema"] = "spiral-spring-report/1";
    j["command"] = command;
    j["config"] = config_echo(config);
    nlohmann::ordered_json res = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json e;
        e["name"] = r.name;
        e["value"] = r.value;
        e["unit"] = r.unit;
        res.push_back(std::move(e));
    }
    j["results"] = std::move(res);
    if (history) {
        nlohmann::ordered_json h = nlohmann::ordered_json::array();
        for (const auto& it : history->iterations) {
            nlohmann::ordered_json e;
            e["iteration"] = it.iteration;
            e["mass_kg"] = it.mass;
            e["energy_j"] = it.energy;
            e["density_jkg"] = it.mass_energy_density;
            e["max_stress_pa"] = it.max_stress;
            e["fraction_at_09"] = it.fraction_at_09;
            h.push_back(std::move(e));
        }
        j["history"] = std::move(h);
    }
    j["warnings"] = warnings;
    return j.dump(2) + "\n";
}

std::string render_fields_csv(const EnergyReport& report, const ThicknessProfile& profile,
                              const ElasticaSolution& sol) {
    const std::size_t n = report.s.size();
    if (sol.moment.size() != n || profile.values.size() != n || report.stress.size() != n ||
        report.energy_density.size() != n)
        throw std::invalid_argument("fields csv: mismatched field lengths");
    std::string out = "s_m,t_m,moment_nm,theta_rad,x_m,y_m,sigma_pa,dudm_jkg\n";
    for (std::size_t i = 0; i < n; ++i) {
        out += g17(report.s[i]);
        out += ',';
        out += g17(profile.values[i]);
        out += ',';
        out += g17(sol.moment[i]);
        out += ',';
        out += g17(sol.theta[i]);
        out += ',';
        out += g17(sol.x[i]);
        out += ',';
        out += g17(sol.y[i]);
        out += ',';
        out += g17(report.stress[i]);
        out += ',';
        out += g17(report.energy_density[i]);
        out += '\n';
    }
    return out;
}

std::string render_curve_csv(const std::vector<SweepPoint>& points) {
    std::string out = "dphi_deg,torque_nm,energy_j\n";
    for (const auto& p : points) {
        out += g17(p.twist * kRadToDeg);
        out += ',';
        out += g17(p.torque);
        out += ',';
        out += g17(p.energy);
        out += '\n';
    }
    return out;
}

std::string render_history_csv(const OptimizationHistory& history) {
    std::string out = "iter,density_jkg,max_stress_pa,fraction_at_09\n";
    for (const auto& it : history.iterations) {
        out += std::to_string(it.iteration);
        out += ',';
        out += g17(it.mass_energy_density);
        out += ',';
        out += g17(it.max_stress);
        out += ',';
        out += g17(it.fraction_at_09);
        out += '\n';
    }
    return out;
}

std::string render_cantilever_csv(const CantileverCase& c, int samples) {
    if (samples < 2) throw std::invalid_argument("cantilever csv: samples must be >= 2");
    std::string out = "x_m,moment_nm,t_opt_m,dudm_uniform_jkg,dudm_opt_jkg\n";
    for (int i = 0; i < samples; ++i) {
        const double x =
            i + 1 == samples ? c.length : c.length * static_cast<double>(i) / (samples - 1);
        const double t_opt = cantilever_optimal_thickness(c, x);
        out += g17(x);
        out += ',';
        out += g17(cantilever_moment(c, x));
        out += ',';
        out += g17(t_opt);
        out += ',';
        out += g17(cantilever_energy_density(c, x));
        out += ',';
        out += g17(cantilever_energy_density(c, x, t_opt));
        out += '\n';
    }
    return out;
}

std::string render_geometry_svg(const Outline& outline) {
    if (outline.inner.size() != outline.outer.size() || outline.inner.empty())
        throw std::invalid_argument("geometry svg: empty or mismatched outline");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto grow = [&](const std::array<double, 2>& p) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    };
    for (const auto& p : outline.inner) grow(p);
    for (const auto& p : outline.outer) grow(p);

    const double margin = 0.05 * std::max(xmax - xmin, ymax - ymin) + 1e-3;
    const double x0 = (xmin - margin) * 1e3;
    const double y0 = (ymin - margin) * 1e3;
    const double wbox = (xmax - xmin + 2 * margin) * 1e3;
    const double hbox = (ymax - ymin + 2 * margin) * 1e3;

    auto points_attr = [](const std::vector<std::array<double, 2>>& pts) {
        std::string s;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) s += ' ';
            s += mm6(pts[i][0]);
            s += ',';
            s += mm6(pts[i][1]);
        }
        return s;
    };

    char head[256];
    std::snprintf(head, sizeof(head),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "viewBox=\"%.6f %.6f %.6f %.6f\" width=\"%.6fmm\" height=\"%.6fmm\">\n",
                  x0, y0, wbox, hbox, wbox, hbox);

    std::string out = head;
    out += "  <desc>Planar spiral strip planform; user units are millimetres.</desc>\n";
    out += "  <polyline id=\"inner-edge\" fill=\"none\" stroke=\"#1f77b4\" "
           "stroke-width=\"0.2\" points=\"";
    out += points_attr(outline.inner);
    out += "\"/>\n";
    out += "  <polyline id=\"outer-edge\" fill=\"none\" stroke=\"#d62728\" "
           "stroke-width=\"0.2\" points=\"";
    out += points_attr(outline.outer);
    out += "\"/>\n";
    out += "</svg>\n";
    return out;
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace spiralspring
