#include "spiralspring/cantilever.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spiralspring {

namespace {

void check_x(const CantileverCase& c, double x) {
    if (!(x >= 0.0 && x <= c.length))
        throw std::invalid_argument("cantilever: x outside [0, L]");
}

}  // namespace

void CantileverCase::validate() const {
    material.validate();
    auto positive = [](double v, const char* name) {
        if (!(std::isfinite(v) && v > 0.0))
            throw std::invalid_argument(std::string("cantilever: ") + name +
                                        " must be finite and > 0");
    };
    positive(tip_load, "tip_load");
    positive(length, "length");
    positive(width, "width");
    positive(thickness, "thickness");
    positive(t_min, "t_min");
}

double cantilever_moment(const CantileverCase& c, double x) {
    check_x(c, x);
    return c.tip_load * (c.length - x);
}

double cantilever_energy_density(const CantileverCase& c, double x, double t) {
    check_x(c, x);
    const double m = c.length - x;
    const double wt2 = c.width * t * t;
    return 6.0 * c.tip_load * c.tip_load * m * m /
           (c.material.young_modulus * c.material.density * wt2 * wt2);
}

double cantilever_energy_density(const CantileverCase& c, double x) {
    return cantilever_energy_density(c, x, c.thickness);
}

double cantilever_optimal_thickness(const CantileverCase& c, double x) {
    check_x(c, x);
    const double t = std::sqrt(6.0 * c.tip_load * (c.length - x) /
                               (c.width * c.material.yield_strength));
    return std::max(c.t_min, t);
}

double cantilever_total_energy(const CantileverCase& c) {
    const double i = c.width * c.thickness * c.thickness * c.thickness / 12.0;
    const double l3 = c.length * c.length * c.length;
    return c.tip_load * c.tip_load * l3 / (6.0 * c.material.young_modulus * i);
}

}  // namespace spiralspring
