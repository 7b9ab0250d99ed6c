#pragma once

namespace spiralspring {

// Linear-elastic material with a yield (fracture) limit. SI units throughout.
struct Material {
    double young_modulus;   // Pa
    double density;         // kg/m^3
    double yield_strength;  // Pa

    // Throws std::invalid_argument when a field is non-positive, non-finite,
    // or yield_strength >= young_modulus (no real solid yields above E).
    void validate() const;
};

// Peak stored-energy-per-unit-mass of a solid rectangular section whose outer
// fiber is at the yield stress: sigma^2 / (6 E rho).
double max_bending_energy_density(const Material& mat);

// Energy density of material homogeneously strained to yield: sigma^2 / (2 E rho).
// Always exactly three times the pure-bending bound.
double homogeneous_yield_limit(const Material& mat);

}  // namespace spiralspring
