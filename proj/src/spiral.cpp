#include "spiralspring/spiral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spiralspring {

namespace {

constexpr int kTableIntervals = 2048;

// Recursive adaptive Simpson with Richardson acceptance |S2 - S1| <= 15 tol.
template <class F>
double simpson_rec(const F& f, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 30);
}

}  // namespace

SpiralKinematics::SpiralKinematics(const SpiralParams& params) : params_(params) {
    params_.validate();
    pitch_ = params_.pitch();
    phi_tab_.resize(kTableIntervals + 1);
    s_tab_.resize(kTableIntervals + 1);
    const double phi_max = params_.final_polar_angle;
    auto f = [this](double phi) { return speed(phi); };
    s_tab_[0] = 0.0;
    phi_tab_[0] = 0.0;
    for (int j = 1; j <= kTableIntervals; ++j) {
        phi_tab_[j] = phi_max * static_cast<double>(j) / kTableIntervals;
        const double seg = phi_tab_[j] - phi_tab_[j - 1];
        const double tol = std::max(1e-18, 5e-15 * seg * params_.outer_radius());
        s_tab_[j] = s_tab_[j - 1] + adaptive_simpson(f, phi_tab_[j - 1], phi_tab_[j], tol);
    }
    phi_tab_.back() = phi_max;
    s_max_ = s_tab_.back();
}

double SpiralKinematics::speed(double phi) const {
    const double r = params_.inner_radius + pitch_ * phi;
    return std::sqrt(r * r + pitch_ * pitch_);
}

void SpiralKinematics::check_phi(double phi) const {
    const double slack = 1e-9 * params_.final_polar_angle;
    if (!(phi >= -slack && phi <= params_.final_polar_angle + slack))
        throw std::invalid_argument("spiral: polar angle outside [0, phi_max]");
}

double SpiralKinematics::radius_at(double phi) const {
    check_phi(phi);
    phi = std::clamp(phi, 0.0, params_.final_polar_angle);
    return params_.inner_radius + (phi / params_.final_polar_angle) * params_.radial_growth;
}

std::array<double, 2> SpiralKinematics::centerline_point(double phi) const {
    const double r = radius_at(phi);
    return {r * std::cos(phi), r * std::sin(phi)};
}

double SpiralKinematics::arc_of_phi(double phi) const {
    check_phi(phi);
    phi = std::clamp(phi, 0.0, params_.final_polar_angle);
    const double step = params_.final_polar_angle / kTableIntervals;
    int j = std::clamp(static_cast<int>(phi / step), 0, kTableIntervals - 1);
    if (phi < phi_tab_[j]) --j;  // guard against rounding at interval edges
    j = std::clamp(j, 0, kTableIntervals - 1);
    auto f = [this](double u) { return speed(u); };
    const double seg = phi - phi_tab_[j];
    const double tol = std::max(1e-18, 5e-15 * std::max(seg, 1e-6) * params_.outer_radius());
    return s_tab_[j] + adaptive_simpson(f, phi_tab_[j], phi, tol);
}

double SpiralKinematics::phi_of_arc(double s) const {
    const double slack = 1e-9 * s_max_;
    if (!(s >= -slack && s <= s_max_ + slack))
        throw std::invalid_argument("spiral: arc length outside [0, S_max]");
    s = std::clamp(s, 0.0, s_max_);
    // Initial guess from the table, then Newton on the monotone map.
    auto it = std::upper_bound(s_tab_.begin(), s_tab_.end(), s);
    double phi;
    if (it == s_tab_.begin()) {
        phi = 0.0;
    } else if (it == s_tab_.end()) {
        phi = params_.final_polar_angle;
    } else {
        const auto j = static_cast<size_t>(it - s_tab_.begin()) - 1;
        const double w = (s - s_tab_[j]) / (s_tab_[j + 1] - s_tab_[j]);
        phi = phi_tab_[j] + w * (phi_tab_[j + 1] - phi_tab_[j]);
    }
    const double tol = 1e-13 * std::max(s_max_, 1.0e-12);
    for (int iter = 0; iter < 60; ++iter) {
        const double err = arc_of_phi(phi) - s;
        if (std::abs(err) <= tol) break;
        phi -= err / speed(phi);
        phi = std::clamp(phi, 0.0, params_.final_polar_angle);
    }
    return phi;
}

double SpiralKinematics::initial_tangent_angle(double s) const {
    const double phi = phi_of_arc(s);
    const double r = params_.inner_radius + pitch_ * phi;
    return phi + std::atan2(r, pitch_);
}

double SpiralKinematics::initial_curvature(double s) const {
    const double phi = phi_of_arc(s);
    const double r = params_.inner_radius + pitch_ * phi;
    const double q = r * r + pitch_ * pitch_;
    return (q + pitch_ * pitch_) / (q * std::sqrt(q));
}

Outline outline(const SpiralKinematics& kin, const ThicknessProfile& profile,
                int samples_per_node) {
    profile.validate();
    if (samples_per_node < 1)
        throw std::invalid_argument("outline: samples_per_node must be >= 1");
    const double s_max = kin.total_arc_length();
    if (std::abs(profile.grid.s_max() - s_max) > 1e-9 * s_max)
        throw std::invalid_argument("outline: profile grid must span [0, S_max]");

    const int m = (profile.grid.size() - 1) * samples_per_node + 1;
    Outline out;
    out.inner.reserve(m);
    out.outer.reserve(m);
    out.arc.reserve(m);
    for (int i = 0; i < m; ++i) {
        const double s = s_max * static_cast<double>(i) / (m - 1);
        const double half = 0.5 * profile.at(s);
        const double kappa = kin.initial_curvature(s);
        if (half >= 1.0 / kappa)
            throw std::domain_error("outline: offset exceeds radius of curvature at S = " +
                                    std::to_string(s) + " m");
        const double phi = kin.phi_of_arc(s);
        const auto c = kin.centerline_point(phi);
        const double th = kin.initial_tangent_angle(s);
        // Left normal; positive curvature means the center of curvature (the
        // spiral's interior) lies on this side.
        const double nx = -std::sin(th), ny = std::cos(th);
        out.inner.push_back({c[0] + nx * half, c[1] + ny * half});
        out.outer.push_back({c[0] - nx * half, c[1] - ny * half});
        out.arc.push_back(s);
    }
    return out;
}

}  // namespace spiralspring
