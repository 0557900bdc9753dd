#include "prrtstar/kinodynamic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace prrtstar {

void DriveModel::validate() const {
    if (!(v_max > 0.0) || !(w_max > 0.0) || !(dt > 0.0) || !(duration > 0.0)) {
        throw std::invalid_argument("DriveModel: speeds and times must be positive");
    }
    if (dt > duration) {
        throw std::invalid_argument("DriveModel: dt must not exceed duration");
    }
    if (control_grid < 2) {
        throw std::invalid_argument("DriveModel: control_grid must be >= 2");
    }
}

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return a - two_pi * std::ceil((a - std::numbers::pi) / two_pi);
}

DriveState rk4_step(const DriveState& s, const DriveControl& u, double dt) {
    // derivative of (x, y, theta) at heading offset dth
    const auto deriv = [&](double dth, double& dx, double& dy) {
        dx = u.v * std::cos(s.theta + dth);
        dy = u.v * std::sin(s.theta + dth);
    };
    double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
    // theta evolves linearly (theta' = w), so the stage headings are exact
    deriv(0.0, k1x, k1y);
    deriv(0.5 * dt * u.w, k2x, k2y);
    deriv(0.5 * dt * u.w, k3x, k3y);
    deriv(dt * u.w, k4x, k4y);

    DriveState out;
    out.x = s.x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    out.y = s.y + dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    out.theta = wrap_angle(s.theta + u.w * dt);
    return out;
}

namespace {

bool trajectory_free(const std::vector<DriveState>& traj, const Environment& env) {
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const State a = traj[i - 1].position();
        const State b = traj[i].position();
        if (!point_free(env, b) || !segment_free(env, a, b)) return false;
    }
    return true;
}

}  // namespace

std::optional<SteerOutcome> steer(const DriveState& from, const State& toward,
                                  const DriveModel& model, const Environment& env) {
    model.validate();
    const std::size_t g = model.control_grid;
    const std::size_t n_steps = static_cast<std::size_t>(std::llround(model.duration / model.dt));

    std::optional<SteerOutcome> best;
    double best_sq = std::numeric_limits<double>::infinity();

    for (std::size_t iv = 0; iv < g; ++iv) {
        const double v = -model.v_max + 2.0 * model.v_max * static_cast<double>(iv) /
                                            static_cast<double>(g - 1);
        for (std::size_t iw = 0; iw < g; ++iw) {
            const double w = -model.w_max + 2.0 * model.w_max * static_cast<double>(iw) /
                                                static_cast<double>(g - 1);
            std::vector<DriveState> traj;
            traj.reserve(n_steps + 1);
            traj.push_back(from);
            for (std::size_t k = 0; k < n_steps; ++k) {
                traj.push_back(rk4_step(traj.back(), {v, w}, model.dt));
            }
            if (!trajectory_free(traj, env)) continue;

            const DriveState& end = traj.back();
            const double dx = end.x - toward[0];
            const double dy = end.y - toward[1];
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_sq) {
                best_sq = d2;
                best = SteerOutcome{std::move(traj), end, {v, w},
                                    std::abs(v) * model.duration};
            }
        }
    }
    return best;
}

double constraint_residual(const std::vector<DriveState>& traj) {
    if (traj.size() < 2) {
        throw std::invalid_argument("constraint_residual: need at least 2 states");
    }
    double worst = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double dx = traj[i].x - traj[i - 1].x;
        const double dy = traj[i].y - traj[i - 1].y;
        const double mid = traj[i - 1].theta + 0.5 * wrap_angle(traj[i].theta - traj[i - 1].theta);
        worst = std::max(worst, std::abs(std::sin(mid) * dx - std::cos(mid) * dy));
    }
    return worst;
}

}  // namespace prrtstar
