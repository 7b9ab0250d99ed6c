#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spiralspring/analysis.hpp"
#include "spiralspring/cantilever.hpp"
#include "spiralspring/config.hpp"
#include "spiralspring/elastica.hpp"
#include "spiralspring/material.hpp"
#include "spiralspring/optimizer.hpp"
#include "spiralspring/report.hpp"
#include "spiralspring/section.hpp"
#include "spiralspring/spiral.hpp"
#include "spiralspring/types.hpp"

namespace {

using namespace spiralspring;

constexpr const char* kCoilWarning = "coil contact between successive turns is not checked";

void prepare_out_dir(const std::string& dir, bool force) {
    namespace fs = std::filesystem;
    const fs::path p(dir);
    if (!fs::exists(p)) return;
    if (!fs::is_directory(p))
        throw std::invalid_argument("output path '" + dir + "' exists and is not a directory");
    if (!fs::is_empty(p) && !force)
        throw std::invalid_argument("output directory '" + dir +
                                    "' is not empty; pass --force to overwrite");
}

ThicknessProfile uniform_profile(const RunConfig& cfg, const SpiralKinematics& kin) {
    const ArcGrid grid = ArcGrid::uniform(kin.total_arc_length(), cfg.grid_n);
    return ThicknessProfile::uniform(grid, cfg.initial_thickness());
}

void run_solve(const RunConfig& cfg, const std::string& dir) {
    const Material mat = cfg.material();
    const SpiralKinematics kin(cfg.spiral());
    const ThicknessProfile profile = uniform_profile(cfg, kin);
    const ElasticaSolution sol = solve_bvp(kin, profile, mat, cfg.load(), cfg.solver_config());
    const SectionMode section = cfg.section_mode();
    const EnergyReport rep = make_energy_report(sol, profile, mat, kin, section);

    std::vector<ResultEntry> results = {
        {"total_energy", rep.total_energy, "J"},
        {"mass", rep.mass, "kg"},
        {"mass_energy_density", rep.mass_energy_density, "J/kg"},
        {"torque", rep.torque, "N*m"},
        {"max_stress", rep.max_stress, "Pa"},
        {"fraction_at_09", rep.fraction_at_09, "1"},
        {"residual_norm", sol.residual_norm, "1"},
    };
    if (section) {
        const double solid_mass = spring_mass(profile, mat, kin);
        results.push_back({"solid_mass", solid_mass, "kg"});
        results.push_back({"solid_mass_energy_density", rep.total_energy / solid_mass, "J/kg"});
    }
    write_file(dir, "report.json", render_report("solve", cfg, results, nullptr, {kCoilWarning}));
    write_file(dir, "fields.csv", render_fields_csv(rep, profile, sol));
}

void run_optimize(const RunConfig& cfg, const std::string& dir) {
    const Material mat = cfg.material();
    const SpiralKinematics kin(cfg.spiral());
    const ThicknessProfile initial = uniform_profile(cfg, kin);
    const OptimizationHistory hist =
        optimize(kin, initial, mat, cfg.load(), cfg.solver_config(), cfg.optimizer_config());
    const IterationRecord& last = hist.iterations.back();
    const ElasticaSolution sol =
        solve_bvp(kin, last.profile, mat, cfg.load(), cfg.solver_config());
    const EnergyReport rep = make_energy_report(sol, last.profile, mat, kin, std::nullopt);

    std::vector<ResultEntry> results = {
        {"iterations", static_cast<double>(last.iteration), "1"},
        {"initial_mass_energy_density", hist.iterations.front().mass_energy_density, "J/kg"},
        {"final_mass_energy_density", last.mass_energy_density, "J/kg"},
        {"final_mass", last.mass, "kg"},
        {"final_energy", last.energy, "J"},
        {"final_max_stress", last.max_stress, "Pa"},
        {"final_fraction_at_09", last.fraction_at_09, "1"},
        {"final_torque", rep.torque, "N*m"},
    };
    if (const SectionMode section = cfg.section_mode()) {
        const double hollow_mass = spring_mass(last.profile, mat, kin, section);
        results.push_back({"hollow_mass", hollow_mass, "kg"});
        results.push_back({"hollow_mass_energy_density", last.energy / hollow_mass, "J/kg"});
    }

    std::vector<std::string> warnings = {kCoilWarning};
    int clamped = 0;
    for (double v : last.profile.values)
        if (v <= cfg.t_min() * (1.0 + 1e-9)) ++clamped;
    if (clamped > 0)
        warnings.push_back(std::to_string(clamped) + " nodes at the thickness floor");

    write_file(dir, "report.json", render_report("optimize", cfg, results, &hist, warnings));
    write_file(dir, "history.csv", render_history_csv(hist));
    write_file(dir, "fields.csv", render_fields_csv(rep, last.profile, sol));
    write_file(dir, "geometry.svg",
               render_geometry_svg(outline(kin, last.profile, cfg.samples_per_node)));
}

void run_sweep(const RunConfig& cfg, const std::string& dir) {
    const Material mat = cfg.material();
    const SpiralKinematics kin(cfg.spiral());
    const ThicknessProfile profile = uniform_profile(cfg, kin);
    const double target = cfg.load().twist;

    std::vector<double> twists;
    if (target == 0.0) {
        twists.push_back(0.0);
    } else {
        twists.resize(cfg.sweep_points);
        for (int i = 0; i < cfg.sweep_points; ++i)
            twists[i] = target * static_cast<double>(i) / (cfg.sweep_points - 1);
    }
    const std::vector<SweepPoint> points = sweep(kin, profile, mat, twists, cfg.solver_config());

    const std::vector<ResultEntry> results = {
        {"points", static_cast<double>(points.size()), "1"},
        {"deflection_deg", cfg.deflection_deg, "deg"},
        {"final_torque", points.back().torque, "N*m"},
        {"final_energy", points.back().energy, "J"},
    };
    write_file(dir, "report.json", render_report("sweep", cfg, results, nullptr, {kCoilWarning}));
    write_file(dir, "curve.csv", render_curve_csv(points));
}

void run_cantilever(const RunConfig& cfg, const std::string& dir) {
    const CantileverCase c = cfg.cantilever_case();
    c.validate();
    const double t_opt0 = cantilever_optimal_thickness(c, 0.0);
    const std::vector<ResultEntry> results = {
        {"clamp_moment", cantilever_moment(c, 0.0), "N*m"},
        {"total_energy", cantilever_total_energy(c), "J"},
        {"optimal_clamp_thickness", t_opt0, "m"},
        {"energy_density_clamp_uniform", cantilever_energy_density(c, 0.0), "J/kg"},
        {"energy_density_clamp_optimal", cantilever_energy_density(c, 0.0, t_opt0), "J/kg"},
        {"material_bound", max_bending_energy_density(c.material), "J/kg"},
    };
    write_file(dir, "report.json", render_report("cantilever", cfg, results, nullptr, {}));
    write_file(dir, "cantilever.csv", render_cantilever_csv(c, cfg.grid_n));
}

void run_section(const RunConfig& cfg, const std::string& dir) {
    const Material mat = cfg.material();
    const double w = cfg.width_mm * 1e-3;
    const double t = cfg.t0_mm * 1e-3;

    const CrossSection solid = SolidRect{w, t};
    validate(solid);
    const SectionProperties sp = section_properties(solid);
    const double solid_bound = section_energy_density_at_yield(solid, mat);

    std::vector<ResultEntry> results = {
        {"solid_area", sp.area, "m^2"},
        {"solid_second_moment", sp.second_moment, "m^4"},
        {"solid_half_depth", sp.half_depth, "m"},
        {"solid_energy_density_bound", solid_bound, "J/kg"},
        {"homogeneous_yield_limit", homogeneous_yield_limit(mat), "J/kg"},
    };
    if (const SectionMode section = cfg.section_mode()) {
        const CrossSection hollow =
            HollowBox{w, t, section->flange_fraction, section->web_fraction};
        validate(hollow);
        const SectionProperties hp = section_properties(hollow);
        const double hollow_bound = section_energy_density_at_yield(hollow, mat);
        results.push_back({"hollow_area", hp.area, "m^2"});
        results.push_back({"hollow_second_moment", hp.second_moment, "m^4"});
        results.push_back({"hollow_half_depth", hp.half_depth, "m"});
        results.push_back({"hollow_energy_density_bound", hollow_bound, "J/kg"});
        results.push_back({"bound_ratio", hollow_bound / solid_bound, "1"});
    }
    write_file(dir, "report.json", render_report("section", cfg, results, nullptr, {}));
}

void run_export(const RunConfig& cfg, const std::string& dir) {
    const SpiralKinematics kin(cfg.spiral());
    const ThicknessProfile profile = uniform_profile(cfg, kin);
    const Outline ol = outline(kin, profile, cfg.samples_per_node);
    const double per_turn = 2.0 * std::numbers::pi * kin.pitch();

    const std::vector<ResultEntry> results = {
        {"total_arc_length", kin.total_arc_length(), "m"},
        {"inner_radius", cfg.spiral().inner_radius, "m"},
        {"outer_radius", cfg.spiral().outer_radius(), "m"},
        {"pitch_per_turn", per_turn, "m"},
        {"coil_clearance", per_turn - cfg.initial_thickness(), "m"},
        {"outline_samples", static_cast<double>(ol.arc.size()), "1"},
    };
    write_file(dir, "report.json", render_report("export", cfg, results, nullptr, {kCoilWarning}));
    write_file(dir, "geometry.svg", render_geometry_svg(ol));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planar spiral torsion spring: large-deflection equilibrium, stored-energy "
                 "analysis, and thickness-distribution optimization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool force = false;
    double deflection_deg = 0.0;
    int grid_n = 0;
    int iterations = 0;
    std::vector<double> hollow;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Path to a key=value configuration file");
        sub->add_option("--out-dir", out_dir,
                        "Output directory (default: run-<command>); created if missing");
        sub->add_flag("--force", force, "Write into a non-empty output directory");
    };
    auto add_deflection = [&](CLI::App* sub) {
        sub->add_option("--deflection-deg", deflection_deg,
                        "Imposed twist of the outer end, degrees");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--grid-n", grid_n, "Number of arc-grid nodes (>= 50)");
    };
    auto add_hollow = [&](CLI::App* sub) {
        sub->add_option("--hollow", hollow,
                        "Hollow-section fractions f_t,f_w (flange thickness, web width)")
            ->delimiter(',')
            ->expected(2);
    };

    CLI::App* solve = app.add_subcommand(
        "solve", "Solve one load case and report energy, stress, and torque");
    add_common(solve);
    add_deflection(solve);
    add_grid(solve);
    add_hollow(solve);

    CLI::App* optimize = app.add_subcommand(
        "optimize", "Iteratively redistribute thickness to maximize energy per unit mass");
    add_common(optimize);
    add_deflection(optimize);
    add_grid(optimize);
    add_hollow(optimize);
    optimize->add_option("--iterations", iterations, "Maximum optimizer iterations (>= 1)");

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Torque-deflection curve from zero to the target twist");
    add_common(sweep_cmd);
    add_deflection(sweep_cmd);
    add_grid(sweep_cmd);

    CLI::App* cantilever = app.add_subcommand(
        "cantilever", "Closed-form tip-loaded cantilever reference calculation");
    add_common(cantilever);

    CLI::App* section = app.add_subcommand(
        "section", "Cross-section properties and the yield-limited energy-density bound");
    add_common(section);
    add_hollow(section);

    CLI::App* export_cmd =
        app.add_subcommand("export", "Planform outline of the undeformed strip");
    add_common(export_cmd);
    add_grid(export_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    try {
        auto given = [&](const char* opt) {
            const CLI::Option* o = sub->get_option_no_throw(opt);
            return o != nullptr && o->count() > 0;
        };
        RunConfig cfg = config_path.empty() ? RunConfig{} : parse_config(config_path);
        if (given("--deflection-deg")) cfg.deflection_deg = deflection_deg;
        if (given("--grid-n")) cfg.grid_n = grid_n;
        if (given("--iterations")) cfg.max_iterations = iterations;
        if (given("--hollow")) {
            if (hollow.size() != 2)
                throw std::invalid_argument("--hollow expects exactly two values: f_t,f_w");
            cfg.hollow_flange_fraction = hollow[0];
            cfg.hollow_web_fraction = hollow[1];
        }
        cfg.validate();

        const std::string dir = out_dir.empty() ? "run-" + name : out_dir;
        prepare_out_dir(dir, force);

        if (name == "solve") run_solve(cfg, dir);
        else if (name == "optimize") run_optimize(cfg, dir);
        else if (name == "sweep") run_sweep(cfg, dir);
        else if (name == "cantilever") run_cantilever(cfg, dir);
        else if (name == "section") run_section(cfg, dir);
        else run_export(cfg, dir);
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
