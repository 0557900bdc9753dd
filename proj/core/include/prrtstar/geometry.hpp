#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace prrtstar {

/// A point in the d-dimensional configuration space, d >= 2.
/// Coordinates are world units; the dimension is fixed per planning problem.
using State = std::vector<double>;

double distance(const State& a, const State& b);
double squared_distance(const State& a, const State& b);

/// Axis-aligned box, closed on all faces. Used for obstacles and world bounds.
struct Aabb {
    State min_corner;
    State max_corner;

    Aabb() = default;
    Aabb(State lo, State hi);

    std::size_t dim() const { return min_corner.size(); }
    bool contains(const State& x) const;       // closed-box membership
    double volume() const;

    /// Per-axis clamp of x onto the box; the closest point of the box to x.
    State clamp(const State& x) const;
};

/// Bounded world plus axis-aligned box obstacles; defines X, X_obs, X_free.
/// Obstacle surfaces count as occupied, the world boundary as free.
struct Environment {
    Aabb bounds;
    std::vector<Aabb> obstacles;
    State start;
    State goal_center;
    double goal_radius = 0.0;

    Environment() = default;
    Environment(Aabb bounds_, std::vector<Aabb> obstacles_, State start_,
                State goal_center_, double goal_radius_);

    std::size_t dim() const { return bounds.dim(); }
    bool in_goal(const State& x) const;
    double diagonal() const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// True iff x lies inside the world bounds and strictly outside every
/// obstacle box (the obstacle boundary is occupied).
bool point_free(const Environment& env, const State& x);

/// Exact slab test: true iff the closed segment x1->x2 stays inside bounds
/// and intersects no obstacle box. No sampling involved.
bool segment_free(const Environment& env, const State& x1, const State& x2);

struct NearestObstacle {
    double dist;     // +inf when the environment has no obstacles
    State closest;   // a point achieving dist; equals x when dist == 0 or no obstacles
};

/// Exact minimum distance from x to the union of obstacle boxes.
/// Inside a box the distance is zero (see module notes on d(x, X_obs)).
NearestObstacle nearest_obstacle(const Environment& env, const State& x);

/// Distance-only variant; avoids building the closest point.
double nearest_obstacle_dist(const Environment& env, const State& x);

/// Volume of the d-dimensional unit ball: pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(std::size_t d);

/// Lebesgue measure of the bounds box. Deliberately an upper bound for
/// mu(X_free); obstacle volume is not subtracted.
double free_measure(const Environment& env);

}  // namespace prrtstar
