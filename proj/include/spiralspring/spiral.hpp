#pragma once

#include <array>
#include <vector>

#include "spiralspring/types.hpp"

namespace spiralspring {

// Kinematics of the undeformed Archimedean spiral centerline: the monotone
// arc-length map S(phi) and its inverse, the (unwrapped) tangent angle
// theta0(S), and the curvature dtheta0/dS. Immutable after construction; all
// queries are pure and thread-safe.
class SpiralKinematics {
  public:
    explicit SpiralKinematics(const SpiralParams& params);

    const SpiralParams& params() const { return params_; }
    double pitch() const { return pitch_; }
    double total_arc_length() const { return s_max_; }

    double radius_at(double phi) const;
    std::array<double, 2> centerline_point(double phi) const;  // (x, y), m

    // Arc length from phi=0, by adaptive quadrature of sqrt(r^2 + a^2) with a
    // tabulated running sum (relative error <= 1e-12).
    double arc_of_phi(double phi) const;

    // Inverse of arc_of_phi via safeguarded Newton on the monotone map.
    double phi_of_arc(double s) const;

    // Tangent angle of the centerline, continuous in S (no 2*pi jumps):
    // theta0 = phi + atan2(r(phi), a).
    double initial_tangent_angle(double s) const;

    // Curvature dtheta0/dS = (r^2 + 2 a^2) / (r^2 + a^2)^(3/2), positive.
    double initial_curvature(double s) const;

  private:
    double speed(double phi) const;  // dS/dphi = sqrt(r^2 + a^2)
    void check_phi(double phi) const;

    SpiralParams params_;
    double pitch_;
    double s_max_;
    std::vector<double> phi_tab_;  // uniform in phi
    std::vector<double> s_tab_;    // running arc length at phi_tab_
};

// Planform edges of the strip: centerline offset +-t(S)/2 along the local
// normal. Matched sample indices: inner[i] and outer[i] share the same S.
struct Outline {
    std::vector<std::array<double, 2>> inner;  // smaller-radius edge, m
    std::vector<std::array<double, 2>> outer;  // larger-radius edge, m
    std::vector<double> arc;                   // S at each sample, m
};

// Samples (grid intervals x samples_per_node) + 1 points uniformly in S.
// Throws std::domain_error (offset exceeds curvature) when t(S)/2 >= 1/kappa(S)
// anywhere, naming the first offending arc position.
Outline outline(const SpiralKinematics& kin, const ThicknessProfile& profile,
                int samples_per_node);

}  // namespace spiralspring
