#include "spiralspring/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spiralspring/section.hpp"

namespace spiralspring {

namespace {

double trapezoid(const std::vector<double>& s, const std::vector<double>& f) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < s.size(); ++i)
        acc += 0.5 * (f[i] + f[i + 1]) * (s[i + 1] - s[i]);
    return acc;
}

void check_matching(const ElasticaSolution& sol, const ThicknessProfile& profile) {
    if (sol.grid.nodes != profile.grid.nodes)
        throw std::invalid_argument("analysis: solution and profile use different grids");
}

// Cross-section area at local thickness t for the active section mode.
double local_area(double width, double t, const SectionMode& section) {
    if (!section) return width * t;
    return section_properties(HollowBox{width, t, section->flange_fraction,
                                        section->web_fraction})
        .area;
}

}  // namespace

double total_energy(const ElasticaSolution& sol, const ThicknessProfile& profile,
                    const Material& mat) {
    check_matching(sol, profile);
    const double ew12 = mat.young_modulus * sol.width / 12.0;
    std::vector<double> integrand(profile.values.size());
    for (size_t i = 0; i < integrand.size(); ++i) {
        const double t = profile.values[i];
        const double ei = ew12 * t * t * t;
        integrand[i] = 0.5 * sol.moment[i] * sol.moment[i] / ei;
    }
    return trapezoid(sol.grid.nodes, integrand);
}

double spring_mass(const ThicknessProfile& profile, const Material& mat,
                   const SpiralKinematics& kin, const SectionMode& section) {
    profile.validate();
    if (std::abs(profile.grid.s_max() - kin.total_arc_length()) >
        1e-9 * kin.total_arc_length())
        throw std::invalid_argument("analysis: profile grid must span [0, S_max]");
    const double w = kin.params().width;
    std::vector<double> density(profile.values.size());
    for (size_t i = 0; i < density.size(); ++i)
        density[i] = mat.density * local_area(w, profile.values[i], section);
    return trapezoid(profile.grid.nodes, density);
}

std::vector<double> energy_density_field(const ElasticaSolution& sol,
                                         const ThicknessProfile& profile, const Material& mat) {
    check_matching(sol, profile);
    const double ew12 = mat.young_modulus * sol.width / 12.0;
    std::vector<double> field(profile.values.size());
    for (size_t i = 0; i < field.size(); ++i) {
        const double t = profile.values[i];
        const double ei = ew12 * t * t * t;
        const double per_length = 0.5 * sol.moment[i] * sol.moment[i] / ei;
        field[i] = per_length / (mat.density * sol.width * t);
    }
    return field;
}

std::vector<double> stress_field(const ElasticaSolution& sol, const ThicknessProfile& profile) {
    check_matching(sol, profile);
    std::vector<double> sigma(profile.values.size());
    for (size_t i = 0; i < sigma.size(); ++i) {
        const double t = profile.values[i];
        sigma[i] = 6.0 * std::abs(sol.moment[i]) / (sol.width * t * t);
    }
    return sigma;
}

double torque(const ElasticaSolution& sol) {
    // C = M - v x + h y is constant along S; average out the roundoff.
    double c_mean = 0.0;
    const size_t n = sol.moment.size();
    for (size_t i = 0; i < n; ++i)
        c_mean += sol.moment[i] - sol.unknowns.v * sol.x[i] + sol.unknowns.h * sol.y[i];
    c_mean /= static_cast<double>(n);
    const double tau = c_mean == 0.0 ? 0.0 : -c_mean;
    if (tau * sol.load.twist < -1e-9 * std::abs(c_mean * sol.load.twist))
        throw SolverError("analysis: torque opposes the imposed twist (solver inconsistency)");
    return tau;
}

double fraction_at_stress(const EnergyReport& report, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw std::invalid_argument("analysis: threshold must lie in (0, 1]");
    const double level = threshold * report.yield_strength;
    const auto& s = report.s;
    const auto& sig = report.stress;
    double loaded = 0.0;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
        const double ds = s[i + 1] - s[i];
        const double a = sig[i] - level, b = sig[i + 1] - level;
        if (a >= 0.0 && b >= 0.0) {
            loaded += ds;
        } else if (a > 0.0 || b > 0.0) {
            // single linear crossing inside the interval
            loaded += ds * (a > 0.0 ? a / (a - b) : b / (b - a));
        }
    }
    return loaded / s.back();
}

EnergyReport make_energy_report(const ElasticaSolution& sol, const ThicknessProfile& profile,
                                const Material& mat, const SpiralKinematics& kin,
                                const SectionMode& section) {
    EnergyReport rep;
    rep.s = sol.grid.nodes;
    rep.total_energy = total_energy(sol, profile, mat);
    rep.mass = spring_mass(profile, mat, kin, section);
    rep.mass_energy_density = rep.total_energy / rep.mass;
    rep.energy_density = energy_density_field(sol, profile, mat);
    rep.stress = stress_field(sol, profile);
    rep.torque = torque(sol);
    rep.yield_strength = mat.yield_strength;
    rep.max_stress = *std::max_element(rep.stress.begin(), rep.stress.end());
    rep.fraction_at_09 = fraction_at_stress(rep, 0.9);
    return rep;
}

std::vector<SweepPoint> sweep(const SpiralKinematics& kin, const ThicknessProfile& profile,
                              const Material& mat, const std::vector<double>& twists,
                              const SolverConfig& config) {
    if (twists.empty()) throw std::invalid_argument("sweep: empty twist list");
    if (twists.size() > 1) {
        const bool up = twists.front() < twists.back();
        for (size_t i = 0; i + 1 < twists.size(); ++i) {
            const bool ok = up ? twists[i] < twists[i + 1] : twists[i] > twists[i + 1];
            if (!ok) throw std::invalid_argument("sweep: twist list must be strictly monotone");
        }
    }

    std::vector<SweepPoint> points;
    points.reserve(twists.size());
    std::optional<Unknowns> warm;
    for (double twist : twists) {
        const ElasticaSolution sol = solve_bvp(kin, profile, mat, LoadCase{twist}, config, warm);
        points.push_back({twist, torque(sol), total_energy(sol, profile, mat)});
        warm = sol.unknowns;
    }
    return points;
}

}  // namespace spiralspring
