#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spiralspring/material.hpp"
#include "spiralspring/spiral.hpp"
#include "spiralspring/types.hpp"

namespace spiralspring {

// Base class for runtime failures of the nonlinear solve (as opposed to
// invalid inputs, which throw std::invalid_argument).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The integrated state became non-finite (overflow) at arc position s.
struct NonFiniteState : SolverError {
    NonFiniteState(double s, const std::string& what) : SolverError(what), arc_position(s) {}
    double arc_position;
};

// Continuation in the twist ran out of step halvings before reaching the target.
struct ContinuationExhausted : SolverError {
    ContinuationExhausted(double twist, const std::array<double, 3>& res, const std::string& what)
        : SolverError(what), failing_twist(twist), last_residuals(res) {}
    double failing_twist;                  // smallest twist that still failed, rad
    std::array<double, 3> last_residuals;  // (rx, ry, rtheta) at the failure
};

struct SolverConfig {
    int grid_n = 400;                   // nodes of the uniform arc grid
    double newton_tol = 1e-10;          // inf-norm of scaled residuals
    int max_newton_iterations = 40;
    double continuation_step = 0.087266462599716474;  // pi/36 rad
    int max_continuation_bisections = 12;

    void validate() const;
};

// Shooting unknowns: start moment and the two end-force components.
struct Unknowns {
    double m0;  // M(0), N*m
    double v;   // N
    double h;   // N
};

// One equilibrium of the spiral elastica under an imposed end twist.
// Fields are sampled at the grid nodes. The combination
// C(S) = M - v*x + h*y is a first integral of the system (global moment
// balance) and is constant along every solution to roundoff.
struct ElasticaSolution {
    ArcGrid grid;
    std::vector<double> moment;  // M(S), N*m
    std::vector<double> theta;   // rad
    std::vector<double> x;       // m
    std::vector<double> y;       // m
    Unknowns unknowns;
    LoadCase load;
    double residual_norm;        // scaled inf-norm at the returned unknowns
    double width;                // strip width used for EI, m
};

// Integrates the initial value problem
//   dM/dS     = v cos(theta) - h sin(theta)
//   dtheta/dS = dtheta0/dS - M / (E I(S)),  I(S) = w t(S)^3 / 12
//   dx/dS     = cos(theta),  dy/dS = sin(theta)
// from x(0) = r0, y(0) = 0, theta(0) = theta0(0) with classical fixed-step RK4
// on the profile's (uniform) grid. Throws NonFiniteState on overflow.
ElasticaSolution integrate_ivp(const SpiralKinematics& kin, const ThicknessProfile& profile,
                               const Material& mat, const Unknowns& unknowns);

// Terminal-condition residuals (raw units): the end point must land at radius
// r1 and polar angle phi_max + twist, with tangent angle theta0(S_max) + twist.
std::array<double, 3> residuals(const SpiralKinematics& kin, const ElasticaSolution& candidate,
                                const LoadCase& load);

// Shooting with damped Newton (finite-difference 3x3 Jacobian) and
// continuation in the twist: on Newton failure the step from the last
// converged twist is halved, up to config.max_continuation_bisections.
// A supplied warm start is tried directly at the target twist first.
ElasticaSolution solve_bvp(const SpiralKinematics& kin, const ThicknessProfile& profile,
                           const Material& mat, const LoadCase& load, const SolverConfig& config,
                           const std::optional<Unknowns>& warm_start = std::nullopt);

}  // namespace spiralspring
