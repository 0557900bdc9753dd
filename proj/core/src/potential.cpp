#include "prrtstar/potential.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace prrtstar {

namespace {

double norm(const Force& f) {
    double s = 0.0;
    for (double v : f) s += v * v;
    return std::sqrt(s);
}

}  // namespace

void ApfConfig::validate(const Environment& env) const {
    if (!(k_a > 0.0) || !(k_r > 0.0) || !(d_g_star > 0.0) || !(d_obs_star > 0.0) ||
        !(lambda > 0.0)) {
        throw std::invalid_argument("ApfConfig: all scale fields must be positive");
    }
    if (!(lambda < 0.1 * env.diagonal())) {
        throw std::invalid_argument("ApfConfig: lambda must be < 0.1 * bounds diagonal");
    }
}

void RgdConfig::validate() const {
    if (k < 1 || k > 10000) {
        throw std::invalid_argument("RgdConfig: k must be in [1, 10000]");
    }
    if (!(lambda > 0.0) || !(d_obs_star > 0.0)) {
        throw std::invalid_argument("RgdConfig: lambda and d_obs_star must be positive");
    }
    if (k < 80 || k > 100) {
        std::cerr << "warning: RGD k=" << k << " outside the suggested range [80, 100]\n";
    }
}

double att_potential(const State& x, const State& goal, const ApfConfig& cfg) {
    const double d = distance(x, goal);
    if (d > cfg.d_g_star) {
        return cfg.k_a * d * d;
    }
    return cfg.k_a * (cfg.d_g_star * d - cfg.d_g_star * cfg.d_g_star);
}

Force att_force(const State& x, const State& goal, const ApfConfig& cfg) {
    const double d = distance(x, goal);
    Force f(x.size(), 0.0);
    if (d == 0.0) return f;  // direction undefined at the goal; force is zero
    // Conic magnitude is K_a*d_g_star, the exact negated gradient of the
    // conic potential branch, so the finite-difference identity holds on
    // both sides of the switch.
    const double scale = (d > cfg.d_g_star) ? 2.0 * cfg.k_a : cfg.k_a * cfg.d_g_star / d;
    for (std::size_t i = 0; i < x.size(); ++i) {
        f[i] = -scale * (x[i] - goal[i]);
    }
    return f;
}

double rep_potential(const Environment& env, const State& x, const ApfConfig& cfg) {
    const double d_min = nearest_obstacle_dist(env, x);
    if (d_min > cfg.d_obs_star) return 0.0;
    if (d_min == 0.0) return std::numeric_limits<double>::infinity();
    const double g = 1.0 / d_min - 1.0 / cfg.d_obs_star;
    return 0.5 * cfg.k_r * g * g;
}

Force rep_force(const Environment& env, const State& x, const ApfConfig& cfg) {
    const NearestObstacle no = nearest_obstacle(env, x);
    Force f(x.size(), 0.0);
    if (no.dist > cfg.d_obs_star) return f;
    if (no.dist == 0.0) {
        throw std::domain_error("rep_force: singular at d_min == 0");
    }
    const double scale =
        cfg.k_r * (1.0 / no.dist - 1.0 / cfg.d_obs_star) / (no.dist * no.dist * no.dist);
    for (std::size_t i = 0; i < x.size(); ++i) {
        f[i] = scale * (x[i] - no.closest[i]);
    }
    return f;
}

DescentResult gradient_descent(const Environment& env, const ApfConfig& cfg) {
    cfg.validate(env);
    DescentResult res;
    State x = env.start;
    res.path.push_back(x);

    // Trapped oscillation around a force equilibrium never drives |F| below
    // the threshold with a fixed step; a window with no decrease of the best
    // potential seen is reported as the same local-minimum outcome.
    constexpr std::size_t kStallWindow = 100;
    double best_potential = std::numeric_limits<double>::infinity();
    std::size_t since_improvement = 0;

    for (std::size_t step = 0;; ++step) {
        if (env.in_goal(x)) {
            res.outcome = DescentOutcome::kReachedGoal;
            return res;
        }
        if (step >= cfg.max_steps) {
            res.outcome = DescentOutcome::kStepLimit;
            return res;
        }

        Force f = att_force(x, env.goal_center, cfg);
        const Force fr = rep_force(env, x, cfg);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += fr[i];
        const double mag = norm(f);
        if (mag < 1e-6) {
            res.outcome = DescentOutcome::kLocalMinimum;
            return res;
        }

        const double u = att_potential(x, env.goal_center, cfg) + rep_potential(env, x, cfg);
        if (u < best_potential - 1e-12) {
            best_potential = u;
            since_improvement = 0;
        } else if (++since_improvement >= kStallWindow) {
            res.outcome = DescentOutcome::kLocalMinimum;
            return res;
        }

        const double d_goal = distance(x, env.goal_center);
        const double step_len = cfg.normalized ? std::min(cfg.lambda, d_goal)
                                               : cfg.lambda * mag;
        State next = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            next[i] += step_len * f[i] / mag;
        }
        // An iterate landing on or inside an obstacle has no defined force;
        // treat the stuck configuration as a local minimum.
        if (nearest_obstacle_dist(env, next) == 0.0 || !env.bounds.contains(next)) {
            res.outcome = DescentOutcome::kLocalMinimum;
            return res;
        }
        x = std::move(next);
        res.path.push_back(x);
    }
}

State rgd(const State& x_rand, const Environment& env, const State& goal,
          const RgdConfig& cfg) {
    if (!point_free(env, x_rand)) {
        throw std::invalid_argument("rgd: x_rand must lie in free space");
    }
    State x = x_rand;
    State next(x.size());
    for (std::size_t n = 0; n < cfg.k; ++n) {
        const double d_goal = distance(x, goal);
        const double d_min = nearest_obstacle_dist(env, x);
        if (d_min <= cfg.d_obs_star) return x;
        if (d_goal == 0.0) return x;
        // Pure quadratic attraction (no conic branch): force -2(x - goal),
        // applied as a lambda-long unit step clamped to the goal distance,
        // or scaled raw when normalization is off.
        const double step_len = cfg.normalized ? std::min(cfg.lambda, d_goal)
                                               : cfg.lambda * 2.0 * d_goal;
        const double scale = step_len / d_goal;
        for (std::size_t i = 0; i < x.size(); ++i) {
            next[i] = x[i] + scale * (goal[i] - x[i]);
        }
        if (!point_free(env, next)) return x;
        std::swap(x, next);
    }
    return x;
}

}  // namespace prrtstar
