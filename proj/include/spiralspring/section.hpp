#pragma once

#include <variant>

#include "spiralspring/material.hpp"

namespace spiralspring {

// Solid rectangle, width w by thickness t (bending about the width axis).
struct SolidRect {
    double width;      // m
    double thickness;  // m
};

// Hollowed rectangle: two solid flanges of thickness flange_fraction*t at the
// outer faces (+-t/2), joined by webs of total width web_fraction*w. The
// degenerate case flange_fraction = 0.5 or web_fraction = 1 is the solid
// rectangle again.
struct HollowBox {
    double width;            // m
    double thickness;        // m
    double flange_fraction;  // f_t in (0, 0.5]
    double web_fraction;     // f_w in (0, 1]
};

using CrossSection = std::variant<SolidRect, HollowBox>;

struct SectionProperties {
    double area;           // A, m^2
    double second_moment;  // I, m^4
    double half_depth;     // c = t/2, m
};

void validate(const CrossSection& cs);  // throws std::invalid_argument

// Exact rectangle sums + parallel-axis theorem.
SectionProperties section_properties(const CrossSection& cs);

// Stored energy per unit mass when the outer fiber reaches yield:
// sigma^2 * I / (2 E rho A c^2). Reduces to sigma^2/(6 E rho) for a solid
// rectangle and approaches sigma^2/(2 E rho) in the ideal sandwich limit.
double section_energy_density_at_yield(const CrossSection& cs, const Material& mat);

}  // namespace spiralspring
