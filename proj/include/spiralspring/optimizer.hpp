#pragma once

#include <optional>
#include <vector>

#include "spiralspring/analysis.hpp"
#include "spiralspring/elastica.hpp"

namespace spiralspring {

struct OptimizerConfig {
    double c2 = 0.5;                    // redistribution rate
    double t_min = 0.001;               // thickness floor, m
    int max_outer_iterations = 10;
    double improvement_tolerance = 1e-3;  // relative density gain to continue
    double c1_tolerance = 1e-3;           // relative max-stress match of calibration

    void validate() const;
};

// Snapshot of one accepted optimizer iterate (iteration 0 = initial design).
struct IterationRecord {
    int iteration;
    ThicknessProfile profile;
    double mass;                 // kg
    double energy;               // J
    double mass_energy_density;  // J/kg
    double max_stress;           // Pa
    double fraction_at_09;
};

struct OptimizationHistory {
    std::vector<IterationRecord> iterations;
};

// calibrate_c1 could not straddle the yield stress within c1 in [0.25, 4].
struct BracketFailure : SolverError {
    BracketFailure(double c1, double stress, const std::string& what)
        : SolverError(what), c1_extreme(c1), achieved_stress(stress) {}
    double c1_extreme;
    double achieved_stress;  // max stress reached at that extreme, Pa
};

// One redistribution step t <- t * exp(-c2 (1 - (dU/dm)/(dU/dm)_max)), clamped
// to t_min. Nodes already at the pure-bending bound keep their thickness
// exactly; the global rescale is deferred to calibrate_c1.
ThicknessProfile redistribute(const ThicknessProfile& profile,
                              const std::vector<double>& energy_density, const Material& mat,
                              const OptimizerConfig& config);

struct CalibrationResult {
    double c1;
    ThicknessProfile profile;  // c1-scaled (and floor-clamped) design
    ElasticaSolution solution; // BVP re-solved on that design
};

// Finds the uniform thickness multiplier c1 in [0.25, 4] for which the
// re-solved design's max stress equals the yield strength within
// config.c1_tolerance (relative). Max stress is increasing in c1 under an
// imposed twist (M ~ t^3, sigma ~ t), which orients the bisection bracket.
CalibrationResult calibrate_c1(const SpiralKinematics& kin, const ThicknessProfile& profile,
                               const Material& mat, const LoadCase& load,
                               const SolverConfig& solver_config, const OptimizerConfig& config,
                               const std::optional<Unknowns>& warm_start = std::nullopt);

// Iterates {solve -> energy-density field -> redistribute -> calibrate} from
// the initial profile. An iterate that loses density (or fails to solve) is
// retried with c2 halved, up to 3 halvings per iteration; the halved c2
// persists for later iterations. Stops at max_outer_iterations, on a relative
// improvement below tolerance, or when the retry budget is exhausted. Every
// recorded iterate satisfies the stress constraint and the thickness floor.
OptimizationHistory optimize(const SpiralKinematics& kin, const ThicknessProfile& initial,
                             const Material& mat, const LoadCase& load,
                             const SolverConfig& solver_config, const OptimizerConfig& config);

}  // namespace spiralspring
