#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spiralspring/config.hpp"
#include "spiralspring/spiral.hpp"

using namespace spiralspring;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------- helpers ----------

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "spiralspring-cli-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args, const fs::path& scratch) {
    static int counter = 0;
    const fs::path out = scratch / ("stdout." + std::to_string(counter));
    const fs::path err = scratch / ("stderr." + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string("\"") + CLI_BIN + "\" " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    const int code = (status >= 256) ? (status >> 8) & 0xff : status;
    return {code, slurp(out), slurp(err)};
}

int line_count(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double result_value(const json& report, const std::string& name) {
    for (const auto& entry : report.at("results"))
        if (entry.at("name") == name) return entry.at("value").get<double>();
    FAIL("missing result entry: ", name);
    return 0.0;
}

bool fields_equal(const RunConfig& a, const RunConfig& b) {
    bool eq = a.r0_mm == b.r0_mm && a.r1_mm == b.r1_mm && a.phi_max_deg == b.phi_max_deg &&
              a.width_mm == b.width_mm && a.t0_mm == b.t0_mm && a.t_min_mm == b.t_min_mm &&
              a.young_modulus_gpa == b.young_modulus_gpa && a.density_kgm3 == b.density_kgm3 &&
              a.yield_strength_mpa == b.yield_strength_mpa &&
              a.deflection_deg == b.deflection_deg && a.grid_n == b.grid_n &&
              a.newton_tol == b.newton_tol &&
              a.max_newton_iterations == b.max_newton_iterations &&
              a.continuation_step_deg == b.continuation_step_deg &&
              a.max_continuation_bisections == b.max_continuation_bisections &&
              a.c2 == b.c2 && a.max_iterations == b.max_iterations &&
              a.improvement_tol == b.improvement_tol && a.c1_tol == b.c1_tol &&
              a.sweep_points == b.sweep_points && a.samples_per_node == b.samples_per_node &&
              a.cantilever_force_n == b.cantilever_force_n &&
              a.cantilever_length_mm == b.cantilever_length_mm &&
              a.cantilever_width_mm == b.cantilever_width_mm &&
              a.cantilever_thickness_mm == b.cantilever_thickness_mm;
    eq = eq && (a.hollow_flange_fraction.has_value() == b.hollow_flange_fraction.has_value());
    eq = eq && (a.hollow_web_fraction.has_value() == b.hollow_web_fraction.has_value());
    if (a.hollow_flange_fraction && b.hollow_flange_fraction)
        eq = eq && *a.hollow_flange_fraction == *b.hollow_flange_fraction;
    if (a.hollow_web_fraction && b.hollow_web_fraction)
        eq = eq && *a.hollow_web_fraction == *b.hollow_web_fraction;
    return eq;
}

}  // namespace

// ---------- configuration parsing ----------

TEST_CASE("empty or comment-only config text yields the defaults") {
    const RunConfig from_empty = parse_config_text("");
    CHECK(fields_equal(from_empty, RunConfig{}));
    const RunConfig from_comments = parse_config_text("# nothing here\n\n   \n# r0_mm = 99\n");
    CHECK(fields_equal(from_comments, RunConfig{}));
    CHECK(from_comments.r0_mm == 27.0);
    CHECK(from_comments.grid_n == 400);
    CHECK(!from_comments.hollow_flange_fraction.has_value());
}

TEST_CASE("serialize/parse is a bit-identical round trip") {
    RunConfig cfg;
    cfg.r0_mm = 23.456789012345678;
    cfg.r1_mm = 61.234567890123456;
    cfg.phi_max_deg = 612.3456789;
    cfg.width_mm = 19.99999999999999;
    cfg.t0_mm = 6.789012345678901;
    cfg.t_min_mm = 1.1e-1;
    cfg.young_modulus_gpa = 2.87654321;
    cfg.density_kgm3 = 1234.56789;
    cfg.yield_strength_mpa = 39.87654321;
    cfg.deflection_deg = 88.88888888888889;
    cfg.grid_n = 123;
    cfg.newton_tol = 3.3e-11;
    cfg.max_newton_iterations = 17;
    cfg.continuation_step_deg = 4.444444444444444;
    cfg.max_continuation_bisections = 9;
    cfg.c2 = 0.6180339887498949;
    cfg.max_iterations = 7;
    cfg.improvement_tol = 2.5e-4;
    cfg.c1_tol = 7.5e-4;
    cfg.sweep_points = 11;
    cfg.samples_per_node = 3;
    cfg.hollow_flange_fraction = 0.24681357924681358;
    cfg.hollow_web_fraction = 0.19753108641975312;
    cfg.cantilever_force_n = 12.345;
    cfg.cantilever_length_mm = 98.7654321;
    cfg.cantilever_width_mm = 21.0987654321;
    cfg.cantilever_thickness_mm = 4.5678901234567895;

    const std::string text = serialize_config(cfg);
    const RunConfig back = parse_config_text(text);
    CHECK(fields_equal(back, cfg));

    // idempotent: serializing the round-tripped config gives the same bytes
    CHECK(serialize_config(back) == text);

    // hollow keys only appear when set
    CHECK(text.find("hollow_flange_fraction") != std::string::npos);
    CHECK(serialize_config(RunConfig{}).find("hollow") == std::string::npos);
}

TEST_CASE("parser reports unknown, duplicate, and malformed entries by line") {
    auto message_of = [](const std::string& text) {
        try {
            parse_config_text(text);
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };

    std::string m = message_of("r0_mm = 27\nbogus_key = 1\n");
    CHECK(m.find("line 2") != std::string::npos);
    CHECK(m.find("unknown key 'bogus_key'") != std::string::npos);

    m = message_of("r0_mm = 27\n\nr0_mm = 28\n");
    CHECK(m.find("line 3") != std::string::npos);
    CHECK(m.find("duplicate key 'r0_mm'") != std::string::npos);

    m = message_of("t0_mm = seven\n");
    CHECK(m.find("line 1") != std::string::npos);
    CHECK(m.find("invalid number for key 't0_mm'") != std::string::npos);

    m = message_of("grid_n = 3.5\n");
    CHECK(m.find("invalid integer for key 'grid_n'") != std::string::npos);

    m = message_of("r0_mm 27\n");
    CHECK(m.find("expected 'key = value'") != std::string::npos);

    m = message_of("r0_mm =\n");
    CHECK(m.find("expected 'key = value'") != std::string::npos);

    // inline comments and whitespace are tolerated
    const RunConfig ok = parse_config_text("  r0_mm =  29.5   # inner radius\n\tt0_mm=6\n");
    CHECK(ok.r0_mm == 29.5);
    CHECK(ok.t0_mm == 6.0);
}

TEST_CASE("cross-field validation names the offending keys") {
    auto expect_mention = [](const std::string& text, const std::string& needle) {
        try {
            parse_config_text(text);
            FAIL("expected invalid_argument for: ", text);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_mention("r1_mm = 20\n", "r1_mm");                    // r1 <= r0
    expect_mention("t0_mm = 0.5\n", "t0_mm");                   // below t_min
    expect_mention("deflection_deg = 630\n", "deflection_deg");  // >= phi_max
    expect_mention("grid_n = 49\n", "grid_n");
    expect_mention("sweep_points = 1\n", "sweep_points");
    expect_mention("hollow_flange_fraction = 0.25\n", "hollow");  // missing partner
    expect_mention("hollow_flange_fraction = 0.6\nhollow_web_fraction = 0.2\n",
                   "hollow_flange_fraction");
    expect_mention("young_modulus_gpa = -1\n", "young_modulus_gpa");
}

TEST_CASE("SI views convert surface units exactly once") {
    const RunConfig cfg;
    CHECK(cfg.material().young_modulus == 3.0e9);
    CHECK(cfg.material().yield_strength == 41.0e6);
    CHECK(cfg.material().density == 1200.0);
    CHECK(cfg.spiral().inner_radius == doctest::Approx(27e-3).epsilon(1e-15));
    CHECK(cfg.spiral().radial_growth == doctest::Approx(43.5e-3).epsilon(1e-15));
    CHECK(cfg.spiral().final_polar_angle == doctest::Approx(3.5 * M_PI).epsilon(1e-15));
    CHECK(cfg.load().twist == doctest::Approx(0.5 * M_PI).epsilon(1e-15));
    CHECK(cfg.initial_thickness() == doctest::Approx(7e-3).epsilon(1e-15));
    CHECK(cfg.solver_config().grid_n == 400);
    CHECK(cfg.optimizer_config().t_min == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(!cfg.section_mode().has_value());

    RunConfig hollow = cfg;
    hollow.hollow_flange_fraction = 0.25;
    hollow.hollow_web_fraction = 0.2;
    REQUIRE(hollow.section_mode().has_value());
    CHECK(hollow.section_mode()->flange_fraction == 0.25);
    CHECK(hollow.section_mode()->web_fraction == 0.2);
}

// ---------- command-line behaviour (subprocess) ----------

TEST_CASE("solve writes a deterministic, self-consistent report") {
    const fs::path dir = scratch_dir("solve");
    const fs::path cfg = dir / "spring.cfg";
    write_text(cfg, "# reference spring, defaults spelled out where it matters\n"
                    "deflection_deg = 90\n");

    const CliResult r1 = run_cli("solve --config " + cfg.string() + " --out-dir " +
                                     (dir / "out1").string(),
                                 dir);
    CHECK(r1.code == 0);
    const std::string report_text = slurp(dir / "out1" / "report.json");
    const json report = json::parse(report_text);

    CHECK(report.at("schema") == "spiral-spring-report/1");
    CHECK(report.at("command") == "solve");
    CHECK(report.at("config").at("r0_mm") == 27.0);
    CHECK(!report.at("config").contains("out_dir"));
    CHECK(!report.contains("history"));
    CHECK(result_value(report, "total_energy") ==
          doctest::Approx(4.093207622929256).epsilon(1e-9));
    CHECK(result_value(report, "mass_energy_density") ==
          doctest::Approx(45.29290148999155).epsilon(1e-9));
    CHECK(result_value(report, "residual_norm") <= 1e-9);

    bool coil_warned = false;
    for (const auto& w : report.at("warnings"))
        if (w.get<std::string>().find("coil contact") != std::string::npos) coil_warned = true;
    CHECK(coil_warned);

    // fields.csv: header + one row per grid node, 17-significant-digit columns
    const std::string fields = slurp(dir / "out1" / "fields.csv");
    CHECK(line_count(fields) == 401);
    std::istringstream in(fields);
    std::string header;
    std::getline(in, header);
    CHECK(header == "s_m,t_m,moment_nm,theta_rad,x_m,y_m,sigma_pa,dudm_jkg");
    std::string first_row;
    std::getline(in, first_row);
    CHECK(first_row.substr(0, 2) == "0,");
    std::string last_row, line;
    while (std::getline(in, line))
        if (!line.empty()) last_row = line;
    const SpiralKinematics kin(RunConfig{}.spiral());
    CHECK(last_row.substr(0, last_row.find(',')) == g17(kin.total_arc_length()));
    // every token survives text -> double -> text unchanged
    std::istringstream row(last_row);
    std::string token;
    int columns = 0;
    while (std::getline(row, token, ',')) {
        ++columns;
        CHECK(g17(std::strtod(token.c_str(), nullptr)) == token);
    }
    CHECK(columns == 8);

    // a second identical run produces identical bytes
    const CliResult r2 = run_cli("solve --config " + cfg.string() + " --out-dir " +
                                     (dir / "out2").string(),
                                 dir);
    CHECK(r2.code == 0);
    CHECK(slurp(dir / "out2" / "report.json") == report_text);
    CHECK(slurp(dir / "out2" / "fields.csv") == fields);
}

TEST_CASE("the echoed config reproduces the report byte for byte") {
    const fs::path dir = scratch_dir("echo");
    const fs::path cfg = dir / "spring.cfg";
    write_text(cfg, "deflection_deg = 77.7\ngrid_n = 200\nt0_mm = 6.5\n");
    const CliResult r1 = run_cli("solve --config " + cfg.string() + " --out-dir " +
                                     (dir / "out1").string(),
                                 dir);
    REQUIRE(r1.code == 0);
    const std::string report_text = slurp(dir / "out1" / "report.json");
    const json report = json::parse(report_text);

    // rebuild a config file from the echo alone
    std::ostringstream rebuilt;
    for (const auto& [key, value] : report.at("config").items()) {
        rebuilt << key << " = "
                << (value.is_number_integer()
                        ? std::to_string(value.get<long long>())
                        : value.dump())
                << "\n";
    }
    const fs::path cfg2 = dir / "rebuilt.cfg";
    write_text(cfg2, rebuilt.str());
    const CliResult r2 = run_cli("solve --config " + cfg2.string() + " --out-dir " +
                                     (dir / "out2").string(),
                                 dir);
    REQUIRE(r2.code == 0);
    CHECK(slurp(dir / "out2" / "report.json") == report_text);
    CHECK(slurp(dir / "out2" / "fields.csv") == slurp(dir / "out1" / "fields.csv"));
}

TEST_CASE("exit codes separate usage, input, and solver failures") {
    const fs::path dir = scratch_dir("exitcodes");

    CHECK(run_cli("", dir).code == 1);                       // missing subcommand
    CHECK(run_cli("solve --bogus-flag", dir).code == 1);     // unknown option
    CHECK(run_cli("--help", dir).code == 0);                 // help is success
    CHECK(run_cli("solve --hollow 0.25", dir).code == 1);    // needs two values

    const fs::path bad = dir / "bad.cfg";
    write_text(bad, "r1_mm = 20\n");
    const CliResult invalid = run_cli("solve --config " + bad.string() + " --out-dir " +
                                          (dir / "o1").string(),
                                      dir);
    CHECK(invalid.code == 1);
    CHECK(invalid.err.find("r1_mm") != std::string::npos);

    const CliResult missing =
        run_cli("solve --config " + (dir / "nope.cfg").string(), dir);
    CHECK(missing.code == 1);
    CHECK(missing.err.find("cannot open") != std::string::npos);

    const fs::path crippled = dir / "crippled.cfg";
    write_text(crippled, "max_newton_iterations = 1\nmax_continuation_bisections = 0\n");
    const CliResult exhausted = run_cli("solve --config " + crippled.string() + " --out-dir " +
                                            (dir / "o2").string(),
                                        dir);
    CHECK(exhausted.code == 2);
    CHECK(exhausted.err.find("error:") != std::string::npos);
}

TEST_CASE("non-empty output directories are protected unless forced") {
    const fs::path dir = scratch_dir("force");
    const fs::path out = dir / "out";
    const std::string base = "cantilever --out-dir " + out.string();

    CHECK(run_cli(base, dir).code == 0);
    const CliResult refused = run_cli(base, dir);
    CHECK(refused.code == 1);
    CHECK(refused.err.find("--force") != std::string::npos);
    CHECK(run_cli(base + " --force", dir).code == 0);

    const fs::path file_in_the_way = dir / "occupied";
    write_text(file_in_the_way, "not a directory\n");
    const CliResult blocked =
        run_cli("cantilever --out-dir " + file_in_the_way.string(), dir);
    CHECK(blocked.code == 1);
    CHECK(blocked.err.find("not a directory") != std::string::npos);
}

TEST_CASE("sweep writes the torque-deflection curve") {
    const fs::path dir = scratch_dir("sweep");
    const fs::path cfg = dir / "spring.cfg";
    write_text(cfg, "grid_n = 200\nsweep_points = 5\n");
    const CliResult r = run_cli("sweep --config " + cfg.string() + " --out-dir " +
                                    (dir / "out").string(),
                                dir);
    REQUIRE(r.code == 0);

    const json report = json::parse(slurp(dir / "out" / "report.json"));
    CHECK(report.at("command") == "sweep");
    CHECK(result_value(report, "points") == 5.0);

    const std::string curve = slurp(dir / "out" / "curve.csv");
    CHECK(line_count(curve) == 6);
    std::istringstream in(curve);
    std::string header;
    std::getline(in, header);
    CHECK(header == "dphi_deg,torque_nm,energy_j");
    std::vector<double> deg, torque;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double d = 0.0, t = 0.0, u = 0.0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &d, &t, &u) == 3);
        deg.push_back(d);
        torque.push_back(t);
    }
    REQUIRE(deg.size() == 5);
    CHECK(deg.front() == 0.0);
    CHECK(deg.back() == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(torque.front() == 0.0);
    for (size_t i = 1; i < torque.size(); ++i) CHECK(torque[i] > torque[i - 1]);

    // a zero target degenerates to the single resting point
    const CliResult zero = run_cli("sweep --config " + cfg.string() +
                                       " --deflection-deg 0 --out-dir " +
                                       (dir / "zero").string(),
                                   dir);
    REQUIRE(zero.code == 0);
    CHECK(line_count(slurp(dir / "zero" / "curve.csv")) == 2);
}

TEST_CASE("optimize writes history, fields, and the planform drawing") {
    const fs::path dir = scratch_dir("optimize");
    const fs::path cfg = dir / "spring.cfg";
    write_text(cfg, "grid_n = 200\n");
    const CliResult r = run_cli("optimize --config " + cfg.string() + " --iterations 2" +
                                    " --out-dir " + (dir / "out").string(),
                                dir);
    REQUIRE(r.code == 0);

    const json report = json::parse(slurp(dir / "out" / "report.json"));
    CHECK(report.at("command") == "optimize");
    CHECK(result_value(report, "iterations") == 2.0);
    CHECK(result_value(report, "final_mass_energy_density") >
          result_value(report, "initial_mass_energy_density"));
    REQUIRE(report.contains("history"));
    REQUIRE(report.at("history").size() == 3);
    CHECK(report.at("history")[0].at("iteration") == 0);
    CHECK(report.at("history")[2].at("iteration") == 2);
    CHECK(report.at("history")[2].at("density_jkg").get<double>() >
          report.at("history")[0].at("density_jkg").get<double>());

    const std::string history = slurp(dir / "out" / "history.csv");
    CHECK(line_count(history) == 4);
    CHECK(history.rfind("iter,density_jkg,max_stress_pa,fraction_at_09", 0) == 0);

    CHECK(fs::exists(dir / "out" / "fields.csv"));
    const std::string svg = slurp(dir / "out" / "geometry.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("inner-edge") != std::string::npos);
    CHECK(svg.find("outer-edge") != std::string::npos);
}

TEST_CASE("cantilever, section, and export report their closed-form numbers") {
    const fs::path dir = scratch_dir("aux");

    const CliResult cant =
        run_cli("cantilever --out-dir " + (dir / "cant").string(), dir);
    REQUIRE(cant.code == 0);
    const json cant_report = json::parse(slurp(dir / "cant" / "report.json"));
    CHECK(result_value(cant_report, "clamp_moment") == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(result_value(cant_report, "total_energy") ==
          doctest::Approx(0.02666666666666667).epsilon(1e-12));
    CHECK(result_value(cant_report, "optimal_clamp_thickness") ==
          doctest::Approx(0.0027050089040022967).epsilon(1e-12));
    CHECK(result_value(cant_report, "energy_density_clamp_optimal") ==
          doctest::Approx(result_value(cant_report, "material_bound")).epsilon(1e-12));
    CHECK(line_count(slurp(dir / "cant" / "cantilever.csv")) == 401);

    const CliResult sect =
        run_cli("section --hollow 0.25,0.2 --out-dir " + (dir / "sect").string(), dir);
    REQUIRE(sect.code == 0);
    const json sect_report = json::parse(slurp(dir / "sect" / "report.json"));
    CHECK(result_value(sect_report, "solid_energy_density_bound") ==
          doctest::Approx(77.82407407407408).epsilon(1e-12));
    CHECK(result_value(sect_report, "homogeneous_yield_limit") ==
          doctest::Approx(233.47222222222223).epsilon(1e-12));
    CHECK(result_value(sect_report, "hollow_area") == doctest::Approx(8.4e-5).epsilon(1e-12));
    CHECK(result_value(sect_report, "bound_ratio") == doctest::Approx(1.5).epsilon(1e-12));

    const CliResult exp = run_cli("export --out-dir " + (dir / "exp").string(), dir);
    REQUIRE(exp.code == 0);
    const json exp_report = json::parse(slurp(dir / "exp" / "report.json"));
    CHECK(result_value(exp_report, "outline_samples") == 1597.0);
    CHECK(result_value(exp_report, "pitch_per_turn") ==
          doctest::Approx(0.024857142857142862).epsilon(1e-12));
    CHECK(result_value(exp_report, "coil_clearance") ==
          doctest::Approx(0.017857142857142863).epsilon(1e-12));
    CHECK(slurp(dir / "exp" / "geometry.svg").find("polyline") != std::string::npos);
}
