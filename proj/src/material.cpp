#include "spiralspring/material.hpp"

#include <cmath>
#include <stdexcept>

namespace spiralspring {

void Material::validate() const {
    if (!(std::isfinite(young_modulus) && young_modulus > 0.0))
        throw std::invalid_argument("material: young_modulus must be finite and > 0");
    if (!(std::isfinite(density) && density > 0.0))
        throw std::invalid_argument("material: density must be finite and > 0");
    if (!(std::isfinite(yield_strength) && yield_strength > 0.0))
        throw std::invalid_argument("material: yield_strength must be finite and > 0");
    if (!(yield_strength < young_modulus))
        throw std::invalid_argument("material: yield_strength must be < young_modulus");
}

double max_bending_energy_density(const Material& mat) {
    return mat.yield_strength * mat.yield_strength / (6.0 * mat.young_modulus * mat.density);
}

double homogeneous_yield_limit(const Material& mat) {
    return mat.yield_strength * mat.yield_strength / (2.0 * mat.young_modulus * mat.density);
}

}  // namespace spiralspring
