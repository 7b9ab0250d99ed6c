#include "spiralspring/elastica.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spiralspring {

void SolverConfig::validate() const {
    if (grid_n < 50) throw std::invalid_argument("solver: grid_n must be >= 50");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("solver: newton_tol must be > 0");
    if (max_newton_iterations < 1)
        throw std::invalid_argument("solver: max_newton_iterations must be >= 1");
    if (!(continuation_step > 0.0))
        throw std::invalid_argument("solver: continuation_step must be > 0");
    if (max_continuation_bisections < 0)
        throw std::invalid_argument("solver: max_continuation_bisections must be >= 0");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Precomputed per-solve tables: curvature and flexural rigidity at the 2n-1
// RK4 stations (nodes and midpoints) of the uniform grid.
struct Workspace {
    int n = 0;
    double h = 0.0;
    double s_max = 0.0;
    double r1 = 0.0;
    double phi_max = 0.0;
    double theta_start = 0.0;  // theta0(0)
    double theta_end = 0.0;    // theta0(S_max)
    double x_start = 0.0;      // r0
    double width = 0.0;
    std::vector<double> kappa_st;
    std::vector<double> ei_st;
};

struct Targets {
    double x, y, theta;
};

struct StateArrays {
    std::vector<double> m, th, x, y;
    void resize(int n) {
        m.resize(n);
        th.resize(n);
        x.resize(n);
        y.resize(n);
    }
};

Targets targets_for(const Workspace& ws, double twist) {
    const double ang = ws.phi_max + twist;
    return {ws.r1 * std::cos(ang), ws.r1 * std::sin(ang), ws.theta_end + twist};
}

Workspace build_workspace(const SpiralKinematics& kin, const ThicknessProfile& profile,
                          const Material& mat) {
    profile.validate();
    mat.validate();
    if (!profile.grid.is_uniform())
        throw std::invalid_argument("elastica: integration grid must be uniform");
    const double s_max = kin.total_arc_length();
    if (std::abs(profile.grid.s_max() - s_max) > 1e-9 * s_max)
        throw std::invalid_argument("elastica: profile grid must span [0, S_max]");

    Workspace ws;
    ws.n = profile.grid.size();
    ws.s_max = s_max;
    ws.h = s_max / (ws.n - 1);
    ws.r1 = kin.params().outer_radius();
    ws.phi_max = kin.params().final_polar_angle;
    ws.theta_start = kin.initial_tangent_angle(0.0);
    ws.theta_end = kin.initial_tangent_angle(s_max);
    ws.x_start = kin.params().inner_radius;
    ws.width = kin.params().width;

    const int ns = 2 * ws.n - 1;
    ws.kappa_st.resize(ns);
    ws.ei_st.resize(ns);
    const double ew12 = mat.young_modulus * ws.width / 12.0;
    for (int j = 0; j < ns; ++j) {
        const double s = s_max * static_cast<double>(j) / (ns - 1);
        ws.kappa_st[j] = kin.initial_curvature(s);
        const double t = (j % 2 == 0)
                             ? profile.values[j / 2]
                             : 0.5 * (profile.values[(j - 1) / 2] + profile.values[(j + 1) / 2]);
        ws.ei_st[j] = ew12 * t * t * t;
    }
    return ws;
}

// Classical fixed-step RK4 over the stations. Returns false (with the arc
// position) when the state stops being finite.
bool run_rk4(const Workspace& ws, const Unknowns& z, StateArrays& out, double* bad_s) {
    const int n = ws.n;
    const double h = ws.h;
    out.resize(n);
    double m = z.m0, th = ws.theta_start, x = ws.x_start, y = 0.0;
    out.m[0] = m;
    out.th[0] = th;
    out.x[0] = x;
    out.y[0] = y;
    for (int i = 0; i + 1 < n; ++i) {
        const int b = 2 * i;
        const double c1 = std::cos(th), s1 = std::sin(th);
        const double km1 = z.v * c1 - z.h * s1;
        const double kt1 = ws.kappa_st[b] - m / ws.ei_st[b];

        const double th2 = th + 0.5 * h * kt1;
        const double m2 = m + 0.5 * h * km1;
        const double c2 = std::cos(th2), s2 = std::sin(th2);
        const double km2 = z.v * c2 - z.h * s2;
        const double kt2 = ws.kappa_st[b + 1] - m2 / ws.ei_st[b + 1];

        const double th3 = th + 0.5 * h * kt2;
        const double m3 = m + 0.5 * h * km2;
        const double c3 = std::cos(th3), s3 = std::sin(th3);
        const double km3 = z.v * c3 - z.h * s3;
        const double kt3 = ws.kappa_st[b + 1] - m3 / ws.ei_st[b + 1];

        const double th4 = th + h * kt3;
        const double m4 = m + h * km3;
        const double c4 = std::cos(th4), s4 = std::sin(th4);
        const double km4 = z.v * c4 - z.h * s4;
        const double kt4 = ws.kappa_st[b + 2] - m4 / ws.ei_st[b + 2];

        m += h / 6.0 * (km1 + 2.0 * km2 + 2.0 * km3 + km4);
        th += h / 6.0 * (kt1 + 2.0 * kt2 + 2.0 * kt3 + kt4);
        x += h / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
        y += h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
        if (!(std::isfinite(m) && std::isfinite(th))) {
            if (bad_s) *bad_s = ws.h * (i + 1);
            return false;
        }
        out.m[i + 1] = m;
        out.th[i + 1] = th;
        out.x[i + 1] = x;
        out.y[i + 1] = y;
    }
    return true;
}

// Scaled residual (positions by r1, angle as-is); inf on overflow.
double eval_residual(const Workspace& ws, const Targets& tg, const Unknowns& z, StateArrays& buf,
                     std::array<double, 3>& scaled) {
    double bad = 0.0;
    if (!run_rk4(ws, z, buf, &bad)) {
        scaled = {kInf, kInf, kInf};
        return kInf;
    }
    const int n = ws.n;
    scaled = {(buf.x[n - 1] - tg.x) / ws.r1, (buf.y[n - 1] - tg.y) / ws.r1,
              buf.th[n - 1] - tg.theta};
    return std::max({std::abs(scaled[0]), std::abs(scaled[1]), std::abs(scaled[2])});
}

// Solves the 3x3 system a*d = rhs by Gaussian elimination with partial
// pivoting; false if (numerically) singular.
bool solve3(double a[3][3], double rhs[3], double d[3]) {
    int idx[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[idx[r]][col]) > std::abs(a[idx[piv]][col])) piv = r;
        std::swap(idx[col], idx[piv]);
        const double p = a[idx[col]][col];
        if (!(std::isfinite(p)) || std::abs(p) < 1e-300) return false;
        for (int r = col + 1; r < 3; ++r) {
            const double f = a[idx[r]][col] / p;
            for (int c = col; c < 3; ++c) a[idx[r]][c] -= f * a[idx[col]][c];
            rhs[idx[r]] -= f * rhs[idx[col]];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double acc = rhs[idx[row]];
        for (int c = row + 1; c < 3; ++c) acc -= a[idx[row]][c] * d[c];
        d[row] = acc / a[idx[row]][row];
        if (!std::isfinite(d[row])) return false;
    }
    return true;
}

struct NewtonOutcome {
    bool converged = false;
    double norm = kInf;
    std::array<double, 3> last_scaled = {kInf, kInf, kInf};
};

// Damped Newton with forward-difference Jacobian on the shooting unknowns.
// On success `z` holds the solution and `cur` the fields at it.
NewtonOutcome newton(const Workspace& ws, const Targets& tg, const SolverConfig& cfg, Unknowns& z,
                     StateArrays& cur, StateArrays& trial) {
    const double ei_mid = ws.ei_st[ws.n - 1];
    const double scale_m = ei_mid / ws.s_max;
    const double scale[3] = {scale_m, scale_m / ws.r1, scale_m / ws.r1};

    NewtonOutcome out;
    std::array<double, 3> res;
    double norm = eval_residual(ws, tg, z, cur, res);
    out.last_scaled = res;
    for (int iter = 0; iter < cfg.max_newton_iterations; ++iter) {
        if (norm <= cfg.newton_tol) {
            out.converged = true;
            out.norm = norm;
            return out;
        }
        if (!std::isfinite(norm)) return out;

        double jac[3][3];
        bool probe_ok = true;
        for (int k = 0; k < 3 && probe_ok; ++k) {
            const double delta = 1e-6 * scale[k];
            Unknowns zp = z;
            (k == 0 ? zp.m0 : k == 1 ? zp.v : zp.h) += delta;
            std::array<double, 3> rp;
            if (!std::isfinite(eval_residual(ws, tg, zp, trial, rp))) {
                probe_ok = false;
                break;
            }
            for (int r = 0; r < 3; ++r) jac[r][k] = (rp[r] - res[r]) / delta;
        }
        if (!probe_ok) return out;

        double rhs[3] = {-res[0], -res[1], -res[2]};
        double step[3];
        if (!solve3(jac, rhs, step)) return out;

        // Backtracking line search on the scaled norm.
        bool accepted = false;
        double alpha = 1.0;
        for (int ls = 0; ls < 9; ++ls) {
            const Unknowns zt{z.m0 + alpha * step[0], z.v + alpha * step[1],
                              z.h + alpha * step[2]};
            std::array<double, 3> rt;
            const double nt = eval_residual(ws, tg, zt, trial, rt);
            if (nt <= cfg.newton_tol || nt < norm * (1.0 - 1e-4 * alpha)) {
                z = zt;
                res = rt;
                norm = nt;
                out.last_scaled = rt;
                std::swap(cur, trial);
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) return out;
    }
    if (norm <= cfg.newton_tol) {
        out.converged = true;
        out.norm = norm;
    }
    return out;
}

ElasticaSolution pack_solution(const Workspace& ws, const ThicknessProfile& profile,
                               const StateArrays& st, const Unknowns& z, const LoadCase& load,
                               double residual_norm) {
    ElasticaSolution sol;
    sol.grid = profile.grid;
    sol.moment = st.m;
    sol.theta = st.th;
    sol.x = st.x;
    sol.y = st.y;
    sol.unknowns = z;
    sol.load = load;
    sol.residual_norm = residual_norm;
    sol.width = ws.width;
    return sol;
}

}  // namespace

ElasticaSolution integrate_ivp(const SpiralKinematics& kin, const ThicknessProfile& profile,
                               const Material& mat, const Unknowns& unknowns) {
    const Workspace ws = build_workspace(kin, profile, mat);
    StateArrays st;
    double bad = 0.0;
    if (!run_rk4(ws, unknowns, st, &bad))
        throw NonFiniteState(bad, "elastica: state became non-finite at S = " +
                                      std::to_string(bad) + " m");
    return pack_solution(ws, profile, st, unknowns, LoadCase{0.0},
                         std::numeric_limits<double>::quiet_NaN());
}

std::array<double, 3> residuals(const SpiralKinematics& kin, const ElasticaSolution& candidate,
                                const LoadCase& load) {
    const double r1 = kin.params().outer_radius();
    const double ang = kin.params().final_polar_angle + load.twist;
    const double theta_t = kin.initial_tangent_angle(kin.total_arc_length()) + load.twist;
    return {candidate.x.back() - r1 * std::cos(ang), candidate.y.back() - r1 * std::sin(ang),
            candidate.theta.back() - theta_t};
}

ElasticaSolution solve_bvp(const SpiralKinematics& kin, const ThicknessProfile& profile,
                           const Material& mat, const LoadCase& load, const SolverConfig& config,
                           const std::optional<Unknowns>& warm_start) {
    config.validate();
    if (profile.grid.size() != config.grid_n)
        throw std::invalid_argument("elastica: profile grid size differs from solver grid_n");
    if (!(std::abs(load.twist) < kin.params().final_polar_angle))
        throw std::invalid_argument("elastica: |twist| must be < phi_max");

    const Workspace ws = build_workspace(kin, profile, mat);
    StateArrays cur, trial;

    // Natural shape: the zero unknowns solve the twist-free problem exactly
    // (M stays identically zero), so skip Newton entirely.
    if (load.twist == 0.0) {
        Unknowns z{0.0, 0.0, 0.0};
        std::array<double, 3> res;
        const double norm = eval_residual(ws, targets_for(ws, 0.0), z, cur, res);
        return pack_solution(ws, profile, cur, z, load, norm);
    }

    if (warm_start) {
        Unknowns z = *warm_start;
        const auto nw = newton(ws, targets_for(ws, load.twist), config, z, cur, trial);
        if (nw.converged) return pack_solution(ws, profile, cur, z, load, nw.norm);
        // fall through to cold continuation
    }

    Unknowns z{0.0, 0.0, 0.0};
    const double dir = load.twist > 0.0 ? 1.0 : -1.0;
    double reached = 0.0;
    double step = config.continuation_step;
    int bisections = 0;
    double final_norm = 0.0;
    while (true) {
        const double remaining = std::abs(load.twist - reached);
        if (remaining <= 0.0) break;
        const double next =
            remaining <= step * (1.0 + 1e-12) ? load.twist : reached + dir * step;
        Unknowns z_try = z;
        const auto nw = newton(ws, targets_for(ws, next), config, z_try, cur, trial);
        if (nw.converged) {
            z = z_try;
            reached = next;
            final_norm = nw.norm;
            if (reached == load.twist) break;
        } else {
            if (++bisections > config.max_continuation_bisections) {
                const std::array<double, 3> raw = {nw.last_scaled[0] * ws.r1,
                                                   nw.last_scaled[1] * ws.r1, nw.last_scaled[2]};
                throw ContinuationExhausted(
                    next, raw,
                    "elastica: continuation exhausted at twist = " + std::to_string(next) +
                        " rad after " + std::to_string(bisections - 1) + " step halvings");
            }
            step *= 0.5;
        }
    }
    return pack_solution(ws, profile, cur, z, load, final_norm);
}

}  // namespace spiralspring
