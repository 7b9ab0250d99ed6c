#pragma once

#include <optional>
#include <vector>

#include "spiralspring/elastica.hpp"
#include "spiralspring/material.hpp"
#include "spiralspring/spiral.hpp"
#include "spiralspring/types.hpp"

namespace spiralspring {

// Hollow-box fractions used when estimating the effect of removing material
// near the neutral axis. std::nullopt selects the solid rectangle.
struct HollowFractions {
    double flange_fraction;  // f_t in (0, 0.5]
    double web_fraction;     // f_w in (0, 1]
};
using SectionMode = std::optional<HollowFractions>;

// Physical summary of one solved load case.
struct EnergyReport {
    std::vector<double> s;               // grid nodes, m
    double total_energy;                 // U, J
    double mass;                         // kg
    double mass_energy_density;          // U/mass, J/kg
    std::vector<double> energy_density;  // dU/dm at nodes, J/kg
    std::vector<double> stress;          // outer-fiber |sigma| at nodes, Pa
    double torque;                       // N*m
    double yield_strength;               // Pa (for threshold queries)
    double fraction_at_09;               // fraction_at_stress(report, 0.9)
    double max_stress;                   // Pa
};

// Trapezoid quadrature of (1/2) M^2 / (E I(S)) over the grid.
double total_energy(const ElasticaSolution& sol, const ThicknessProfile& profile,
                    const Material& mat);

// Trapezoid quadrature of the linear mass density rho*A(S); the solid section
// has A = w t(S), a hollow section the flange/web area at the same t(S).
double spring_mass(const ThicknessProfile& profile, const Material& mat,
                   const SpiralKinematics& kin, const SectionMode& section = std::nullopt);

// Pointwise stored energy per unit mass, ((1/2) M^2/(E I)) / (rho w t).
std::vector<double> energy_density_field(const ElasticaSolution& sol,
                                         const ThicknessProfile& profile, const Material& mat);

// Pointwise outer-fiber bending stress magnitude 6 |M| / (w t^2).
std::vector<double> stress_field(const ElasticaSolution& sol, const ThicknessProfile& profile);

// Reaction torque about the spiral center, from the first integral
// C = M - v x + h y (constant along S): tau = -mean(C). Throws SolverError if
// tau opposes the imposed twist (solver inconsistency).
double torque(const ElasticaSolution& sol);

// Arc-length fraction (linear-interpolated crossings) where
// stress >= threshold * yield_strength; threshold in (0, 1].
double fraction_at_stress(const EnergyReport& report, double threshold);

EnergyReport make_energy_report(const ElasticaSolution& sol, const ThicknessProfile& profile,
                                const Material& mat, const SpiralKinematics& kin,
                                const SectionMode& section = std::nullopt);

struct SweepPoint {
    double twist;   // rad
    double torque;  // N*m
    double energy;  // J
};

// Quasi-static torque-deflection curve over a strictly monotone twist list,
// warm-starting each solve from the previous point.
std::vector<SweepPoint> sweep(const SpiralKinematics& kin, const ThicknessProfile& profile,
                              const Material& mat, const std::vector<double>& twists,
                              const SolverConfig& config);

}  // namespace spiralspring
