#pragma once

#include <vector>

namespace spiralspring {

// Archimedean spiral r(phi) = r0 + (phi/phi_max) * dr, phi in [0, phi_max],
// extruded to a strip of width w (normal to the spiral plane).
struct SpiralParams {
    double inner_radius;       // r0, m
    double radial_growth;      // dr, m (outer radius r1 = r0 + dr)
    double final_polar_angle;  // phi_max, rad
    double width;              // w, m

    double outer_radius() const { return inner_radius + radial_growth; }
    double pitch() const { return radial_growth / final_polar_angle; }  // m/rad

    void validate() const;  // all strictly positive
};

// Discretization of the arc coordinate S over [0, S_max].
struct ArcGrid {
    std::vector<double> nodes;  // strictly increasing, nodes[0] == 0

    static ArcGrid uniform(double s_max, int n);

    int size() const { return static_cast<int>(nodes.size()); }
    double s_max() const { return nodes.back(); }
    bool is_uniform(double rel_tol = 1e-12) const;

    void validate() const;  // >= 50 nodes, strictly increasing, starts at 0
};

// Thickness distribution t(S) sampled at grid nodes, piecewise-linear between.
struct ThicknessProfile {
    ArcGrid grid;
    std::vector<double> values;  // m, one per node, strictly positive

    static ThicknessProfile uniform(const ArcGrid& grid, double t);

    double at(double s) const;  // piecewise-linear interpolation
    double min_value() const;

    void validate() const;
};

// One quasi-static load case: the imposed twist of the outer end.
struct LoadCase {
    double twist;  // rad; validity |twist| < phi_max is checked by the solver
};

}  // namespace spiralspring
