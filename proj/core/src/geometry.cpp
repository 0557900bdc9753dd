#include "prrtstar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace prrtstar {

namespace {

void require_same_dim(const State& a, const State& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    }
}

bool all_finite(const State& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

double squared_distance(const State& a, const State& b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double distance(const State& a, const State& b) {
    return std::sqrt(squared_distance(a, b));
}

Aabb::Aabb(State lo, State hi) : min_corner(std::move(lo)), max_corner(std::move(hi)) {
    require_same_dim(min_corner, max_corner);
    for (std::size_t i = 0; i < min_corner.size(); ++i) {
        if (!(min_corner[i] <= max_corner[i])) {
            throw std::invalid_argument("Aabb: min_corner[" + std::to_string(i) +
                                        "] > max_corner[" + std::to_string(i) + "]");
        }
    }
}

bool Aabb::contains(const State& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < min_corner[i] || x[i] > max_corner[i]) return false;
    }
    return true;
}

double Aabb::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < min_corner.size(); ++i) {
        v *= max_corner[i] - min_corner[i];
    }
    return v;
}

State Aabb::clamp(const State& x) const {
    State out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = std::clamp(x[i], min_corner[i], max_corner[i]);
    }
    return out;
}

Environment::Environment(Aabb bounds_, std::vector<Aabb> obstacles_, State start_,
                         State goal_center_, double goal_radius_)
    : bounds(std::move(bounds_)),
      obstacles(std::move(obstacles_)),
      start(std::move(start_)),
      goal_center(std::move(goal_center_)),
      goal_radius(goal_radius_) {
    validate();
}

bool Environment::in_goal(const State& x) const {
    return distance(x, goal_center) <= goal_radius;
}

double Environment::diagonal() const {
    return distance(bounds.min_corner, bounds.max_corner);
}

void Environment::validate() const {
    const std::size_t d = bounds.dim();
    if (d < 2) throw std::invalid_argument("bounds: dimension must be >= 2");
    if (!all_finite(bounds.min_corner) || !all_finite(bounds.max_corner)) {
        throw std::invalid_argument("bounds: coordinates must be finite");
    }
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
        const Aabb& o = obstacles[k];
        if (o.dim() != d) {
            throw std::invalid_argument("obstacles[" + std::to_string(k) + "]: dimension mismatch");
        }
        if (!all_finite(o.min_corner) || !all_finite(o.max_corner)) {
            throw std::invalid_argument("obstacles[" + std::to_string(k) + "]: coordinates must be finite");
        }
    }
    if (start.size() != d || !all_finite(start)) {
        throw std::invalid_argument("start: must be a finite point of the bounds dimension");
    }
    if (goal_center.size() != d || !all_finite(goal_center)) {
        throw std::invalid_argument("goal_center: must be a finite point of the bounds dimension");
    }
    if (!(goal_radius > 0.0) || !std::isfinite(goal_radius)) {
        throw std::invalid_argument("goal_radius: must be positive and finite");
    }
    if (!point_free(*this, start)) {
        throw std::invalid_argument("start: not in free space");
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (goal_center[i] - goal_radius < bounds.min_corner[i] ||
            goal_center[i] + goal_radius > bounds.max_corner[i]) {
            throw std::invalid_argument("goal: goal ball must lie inside bounds");
        }
    }
}

bool point_free(const Environment& env, const State& x) {
    if (!env.bounds.contains(x)) return false;
    for (const Aabb& o : env.obstacles) {
        if (o.contains(x)) return false;
    }
    return true;
}

namespace {

// Parametric interval (slab) intersection of the closed segment p + t*(q-p),
// t in [0,1], against a closed box. Touching counts as a hit.
bool segment_hits_box(const State& p, const State& q, const Aabb& box) {
    double t0 = 0.0;
    double t1 = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double dir = q[i] - p[i];
        if (dir == 0.0) {
            if (p[i] < box.min_corner[i] || p[i] > box.max_corner[i]) return false;
        } else {
            double ta = (box.min_corner[i] - p[i]) / dir;
            double tb = (box.max_corner[i] - p[i]) / dir;
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return false;
        }
    }
    return true;
}

}  // namespace

bool segment_free(const Environment& env, const State& x1, const State& x2) {
    // bounds are convex, so endpoint containment covers the whole segment
    if (!env.bounds.contains(x1) || !env.bounds.contains(x2)) return false;
    for (const Aabb& o : env.obstacles) {
        if (segment_hits_box(x1, x2, o)) return false;
    }
    return true;
}

NearestObstacle nearest_obstacle(const Environment& env, const State& x) {
    NearestObstacle best{std::numeric_limits<double>::infinity(), x};
    double best_sq = std::numeric_limits<double>::infinity();
    for (const Aabb& o : env.obstacles) {
        State c = o.clamp(x);
        const double d2 = squared_distance(x, c);
        if (d2 < best_sq) {
            best_sq = d2;
            best.closest = std::move(c);
            if (d2 == 0.0) break;
        }
    }
    if (best_sq != std::numeric_limits<double>::infinity()) {
        best.dist = std::sqrt(best_sq);
    }
    return best;
}

double nearest_obstacle_dist(const Environment& env, const State& x) {
    double best_sq = std::numeric_limits<double>::infinity();
    for (const Aabb& o : env.obstacles) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double c = std::clamp(x[i], o.min_corner[i], o.max_corner[i]);
            const double d = x[i] - c;
            d2 += d * d;
        }
        if (d2 < best_sq) {
            best_sq = d2;
            if (d2 == 0.0) return 0.0;
        }
    }
    return best_sq == std::numeric_limits<double>::infinity()
               ? std::numeric_limits<double>::infinity()
               : std::sqrt(best_sq);
}

double unit_ball_volume(std::size_t d) {
    if (d < 1) throw std::invalid_argument("unit_ball_volume: d must be >= 1");
    const double half_d = static_cast<double>(d) / 2.0;
    return std::pow(std::numbers::pi, half_d) / std::tgamma(half_d + 1.0);
}

double free_measure(const Environment& env) {
    return env.bounds.volume();
}

}  // namespace prrtstar
