#include "spiralspring/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spiralspring {

void OptimizerConfig::validate() const {
    if (!(c2 > 0.0)) throw std::invalid_argument("optimizer: c2 must be > 0");
    if (!(t_min > 0.0)) throw std::invalid_argument("optimizer: t_min must be > 0");
    if (max_outer_iterations < 1)
        throw std::invalid_argument("optimizer: max_outer_iterations must be >= 1");
    if (!(improvement_tolerance > 0.0))
        throw std::invalid_argument("optimizer: improvement_tolerance must be > 0");
    if (!(c1_tolerance > 0.0)) throw std::invalid_argument("optimizer: c1_tolerance must be > 0");
}

namespace {

constexpr double kC1Low = 0.25;
constexpr double kC1High = 4.0;

ThicknessProfile scaled_clamped(const ThicknessProfile& base, double c1, double t_min) {
    ThicknessProfile out = base;
    for (double& v : out.values) v = std::max(t_min, c1 * v);
    return out;
}

// Warm-start guess for a rescaled design: the moment field scales roughly
// with the rigidity, EI ~ t^3.
Unknowns scale_unknowns(const Unknowns& z, double ratio) {
    const double f = ratio * ratio * ratio;
    return {z.m0 * f, z.v * f, z.h * f};
}

double max_stress_of(const ElasticaSolution& sol, const ThicknessProfile& profile) {
    const std::vector<double> sigma = stress_field(sol, profile);
    return *std::max_element(sigma.begin(), sigma.end());
}

IterationRecord record_for(int iteration, const ThicknessProfile& profile,
                           const EnergyReport& rep) {
    return {iteration, profile,          rep.mass,          rep.total_energy,
            rep.mass_energy_density, rep.max_stress, rep.fraction_at_09};
}

}  // namespace

ThicknessProfile redistribute(const ThicknessProfile& profile,
                              const std::vector<double>& energy_density, const Material& mat,
                              const OptimizerConfig& config) {
    profile.validate();
    config.validate();
    if (energy_density.size() != profile.values.size())
        throw std::invalid_argument("redistribute: field and profile grids differ");
    const double bound = max_bending_energy_density(mat);
    ThicknessProfile out = profile;
    for (size_t i = 0; i < out.values.size(); ++i) {
        const double ratio = energy_density[i] / bound;
        out.values[i] = std::max(config.t_min,
                                 profile.values[i] * std::exp(-config.c2 * (1.0 - ratio)));
    }
    return out;
}

CalibrationResult calibrate_c1(const SpiralKinematics& kin, const ThicknessProfile& profile,
                               const Material& mat, const LoadCase& load,
                               const SolverConfig& solver_config, const OptimizerConfig& config,
                               const std::optional<Unknowns>& warm_start) {
    config.validate();
    const double yield = mat.yield_strength;
    const double tol = config.c1_tolerance * yield;

    struct Probe {
        double c1;
        double stress;
        ThicknessProfile profile;
        ElasticaSolution solution;
    };
    auto probe = [&](double c1, const std::optional<Unknowns>& warm) {
        ThicknessProfile p = scaled_clamped(profile, c1, config.t_min);
        ElasticaSolution sol = solve_bvp(kin, p, mat, load, solver_config, warm);
        const double sigma = max_stress_of(sol, p);
        return Probe{c1, sigma, std::move(p), std::move(sol)};
    };

    Probe at_one = probe(1.0, warm_start);
    if (std::abs(at_one.stress - yield) <= tol)
        return {1.0, std::move(at_one.profile), std::move(at_one.solution)};

    // Max stress is increasing in c1 under an imposed twist, which fixes the
    // bracket side.
    const bool too_strong = at_one.stress > yield;
    const double c_far = too_strong ? kC1Low : kC1High;
    Probe far = probe(c_far, scale_unknowns(at_one.solution.unknowns, c_far));
    if (std::abs(far.stress - yield) <= tol)
        return {far.c1, std::move(far.profile), std::move(far.solution)};
    if ((too_strong && far.stress > yield) || (!too_strong && far.stress < yield))
        throw BracketFailure(c_far, far.stress,
                             "calibrate_c1: yield stress unreachable within c1 in [" +
                                 std::to_string(kC1Low) + ", " + std::to_string(kC1High) +
                                 "]; max stress " + std::to_string(far.stress) + " Pa at c1 = " +
                                 std::to_string(c_far));

    Probe lo = too_strong ? std::move(far) : std::move(at_one);   // stress < yield
    Probe hi = too_strong ? std::move(at_one) : std::move(far);   // stress > yield
    const Probe* nearest = &lo;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo.c1 + hi.c1);
        Probe m = probe(mid, scale_unknowns(nearest->solution.unknowns, mid / nearest->c1));
        if (std::abs(m.stress - yield) <= tol)
            return {m.c1, std::move(m.profile), std::move(m.solution)};
        if (m.stress < yield) {
            lo = std::move(m);
            nearest = &lo;
        } else {
            hi = std::move(m);
            nearest = &hi;
        }
        if (hi.c1 - lo.c1 < 1e-14) break;
    }
    throw SolverError("calibrate_c1: bisection failed to match the yield stress to tolerance");
}

OptimizationHistory optimize(const SpiralKinematics& kin, const ThicknessProfile& initial,
                             const Material& mat, const LoadCase& load,
                             const SolverConfig& solver_config, const OptimizerConfig& config) {
    config.validate();
    initial.validate();
    if (initial.min_value() < config.t_min)
        throw std::invalid_argument("optimize: initial profile below the thickness floor");

    OptimizationHistory history;

    ThicknessProfile profile = initial;
    ElasticaSolution sol = solve_bvp(kin, profile, mat, load, solver_config);
    EnergyReport rep = make_energy_report(sol, profile, mat, kin);
    // Record the initial design as-is when feasible; otherwise pull it onto
    // the constraint surface first so every recorded iterate is feasible.
    if (rep.max_stress > mat.yield_strength * (1.0 + config.c1_tolerance)) {
        CalibrationResult cal =
            calibrate_c1(kin, profile, mat, load, solver_config, config, sol.unknowns);
        profile = std::move(cal.profile);
        sol = std::move(cal.solution);
        rep = make_energy_report(sol, profile, mat, kin);
    }
    history.iterations.push_back(record_for(0, profile, rep));

    OptimizerConfig working = config;  // c2 halvings persist across iterations
    for (int iter = 1; iter <= config.max_outer_iterations; ++iter) {
        bool accepted = false;
        double improvement = 0.0;
        for (int attempt = 0; attempt <= 3; ++attempt) {
            ThicknessProfile candidate = redistribute(profile, rep.energy_density, mat, working);
            CalibrationResult cal;
            try {
                cal = calibrate_c1(kin, candidate, mat, load, solver_config, working,
                                   sol.unknowns);
            } catch (const SolverError& err) {
                if (attempt == 3)
                    throw SolverError("optimize: iteration " + std::to_string(iter) + ": " +
                                      err.what());
                working.c2 *= 0.5;
                continue;
            }
            EnergyReport rep_new = make_energy_report(cal.solution, cal.profile, mat, kin);
            if (rep_new.mass_energy_density < rep.mass_energy_density) {
                if (attempt == 3) return history;  // regression persists: stop
                working.c2 *= 0.5;
                continue;
            }
            improvement = (rep_new.mass_energy_density - rep.mass_energy_density) /
                          rep.mass_energy_density;
            profile = std::move(cal.profile);
            sol = std::move(cal.solution);
            rep = std::move(rep_new);
            history.iterations.push_back(record_for(iter, profile, rep));
            accepted = true;
            break;
        }
        if (!accepted || improvement < config.improvement_tolerance) break;
    }
    return history;
}

}  // namespace spiralspring
