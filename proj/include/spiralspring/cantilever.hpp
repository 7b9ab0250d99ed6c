#pragma once

#include "spiralspring/material.hpp"

namespace spiralspring {

// Small-deflection cantilever with a tip load: the closed-form verification
// oracle for the energy-density machinery. x runs from the clamp (x=0) to the
// free end (x=L).
struct CantileverCase {
    double tip_load;   // F, N
    double length;     // L, m
    double width;      // w, m
    double thickness;  // uniform t, m (profile variants pass t(x) per call)
    double t_min;      // manufacturing floor for the optimal profile, m
    Material material;

    void validate() const;
};

// Bending moment M(x) = F (L - x).
double cantilever_moment(const CantileverCase& c, double x);

// Stored energy per unit mass at x for local thickness t:
// 6 F^2 (L - x)^2 / (E rho w^2 t^4).
double cantilever_energy_density(const CantileverCase& c, double x, double t);

// Uniform-thickness variant of the above.
double cantilever_energy_density(const CantileverCase& c, double x);

// Fully-stressed thickness max(t_min, sqrt(6 F (L - x) / (w sigma_max))):
// the outer fiber sits exactly at yield wherever the floor is inactive.
double cantilever_optimal_thickness(const CantileverCase& c, double x);

// Total stored energy of the uniform beam, F^2 L^3 / (6 E I) with I = w t^3/12.
double cantilever_total_energy(const CantileverCase& c);

}  // namespace spiralspring
