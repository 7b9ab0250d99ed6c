#include "spiralspring/section.hpp"

#include <cmath>
#include <stdexcept>

namespace spiralspring {

namespace {

void check_plate(double width, double thickness) {
    if (!(std::isfinite(width) && width > 0.0))
        throw std::invalid_argument("section: width must be finite and > 0");
    if (!(std::isfinite(thickness) && thickness > 0.0))
        throw std::invalid_argument("section: thickness must be finite and > 0");
}

}  // namespace

void validate(const CrossSection& cs) {
    if (const auto* s = std::get_if<SolidRect>(&cs)) {
        check_plate(s->width, s->thickness);
        return;
    }
    const auto& h = std::get<HollowBox>(cs);
    check_plate(h.width, h.thickness);
    if (!(h.flange_fraction > 0.0 && h.flange_fraction <= 0.5))
        throw std::invalid_argument("section: flange_fraction must lie in (0, 0.5]");
    if (!(h.web_fraction > 0.0 && h.web_fraction <= 1.0))
        throw std::invalid_argument("section: web_fraction must lie in (0, 1]");
}

SectionProperties section_properties(const CrossSection& cs) {
    validate(cs);
    if (const auto* s = std::get_if<SolidRect>(&cs)) {
        const double w = s->width, t = s->thickness;
        return {w * t, w * t * t * t / 12.0, t / 2.0};
    }
    const auto& hb = std::get<HollowBox>(cs);
    const double w = hb.width, t = hb.thickness;
    const double tf = hb.flange_fraction * t;       // one flange's thickness
    const double hw = t - 2.0 * tf;                 // web height
    const double ww = hb.web_fraction * w;          // total web width
    const double d = (t - tf) / 2.0;                // flange centroid offset
    const double a_fl = w * tf;
    const double area = 2.0 * a_fl + ww * hw;
    const double i_fl = w * tf * tf * tf / 12.0 + a_fl * d * d;  // parallel axis
    const double i_web = ww * hw * hw * hw / 12.0;
    return {area, 2.0 * i_fl + i_web, t / 2.0};
}

double section_energy_density_at_yield(const CrossSection& cs, const Material& mat) {
    const SectionProperties p = section_properties(cs);
    const double s = mat.yield_strength;
    return s * s * p.second_moment /
           (2.0 * mat.young_modulus * mat.density * p.area * p.half_depth * p.half_depth);
}

}  // namespace spiralspring
