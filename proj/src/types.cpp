#include "spiralspring/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spiralspring {

void SpiralParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(std::isfinite(v) && v > 0.0))
            throw std::invalid_argument(std::string("spiral: ") + name + " must be finite and > 0");
    };
    positive(inner_radius, "inner_radius");
    positive(radial_growth, "radial_growth");
    positive(final_polar_angle, "final_polar_angle");
    positive(width, "width");
}

ArcGrid ArcGrid::uniform(double s_max, int n) {
    if (!(std::isfinite(s_max) && s_max > 0.0))
        throw std::invalid_argument("grid: s_max must be finite and > 0");
    if (n < 50) throw std::invalid_argument("grid: need at least 50 nodes");
    ArcGrid g;
    g.nodes.resize(n);
    for (int i = 0; i < n; ++i) g.nodes[i] = s_max * static_cast<double>(i) / (n - 1);
    g.nodes.back() = s_max;
    return g;
}

bool ArcGrid::is_uniform(double rel_tol) const {
    const double h = (nodes.back() - nodes.front()) / (size() - 1);
    for (int i = 0; i + 1 < size(); ++i)
        if (std::abs(nodes[i + 1] - nodes[i] - h) > rel_tol * h) return false;
    return true;
}

void ArcGrid::validate() const {
    if (size() < 50) throw std::invalid_argument("grid: need at least 50 nodes");
    if (nodes.front() != 0.0) throw std::invalid_argument("grid: first node must be 0");
    for (int i = 0; i + 1 < size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw std::invalid_argument("grid: nodes must be strictly increasing");
    if (!std::isfinite(nodes.back())) throw std::invalid_argument("grid: non-finite node");
}

ThicknessProfile ThicknessProfile::uniform(const ArcGrid& grid, double t) {
    ThicknessProfile p;
    p.grid = grid;
    p.values.assign(grid.nodes.size(), t);
    p.validate();
    return p;
}

double ThicknessProfile::at(double s) const {
    const double s_max = grid.nodes.back();
    const double slack = 1e-9 * s_max;
    if (!(s >= -slack && s <= s_max + slack))
        throw std::invalid_argument("profile: arc position outside [0, S_max]");
    s = std::clamp(s, 0.0, s_max);
    auto it = std::upper_bound(grid.nodes.begin(), grid.nodes.end(), s);
    if (it == grid.nodes.begin()) return values.front();
    if (it == grid.nodes.end()) return values.back();
    const auto i = static_cast<size_t>(it - grid.nodes.begin()) - 1;
    const double w = (s - grid.nodes[i]) / (grid.nodes[i + 1] - grid.nodes[i]);
    return values[i] + w * (values[i + 1] - values[i]);
}

double ThicknessProfile::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

void ThicknessProfile::validate() const {
    grid.validate();
    if (values.size() != grid.nodes.size())
        throw std::invalid_argument("profile: one thickness value per grid node required");
    for (double v : values)
        if (!(std::isfinite(v) && v > 0.0))
            throw std::invalid_argument("profile: thickness values must be finite and > 0");
}

}  // namespace spiralspring
