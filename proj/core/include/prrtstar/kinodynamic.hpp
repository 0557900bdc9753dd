#pragma once

#include <optional>
#include <vector>

#include "prrtstar/geometry.hpp"

namespace prrtstar {

/// Planar pose of the differential-drive robot.
struct DriveState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // radians, normalized to (-pi, pi]

    State position() const { return {x, y}; }
};

struct DriveControl {
    double v = 0.0;  // linear speed
    double w = 0.0;  // angular speed
};

struct DriveModel {
    double v_max = 1.0;
    double w_max = 1.5;
    double dt = 0.02;          // integration step
    double duration = 0.5;     // control hold time per extension
    std::size_t control_grid = 7;  // (v, w) samples per axis

    void validate() const;
};

/// Normalize an angle to (-pi, pi].
double wrap_angle(double a);

/// One classical RK4 step of the unicycle x' = v cos(theta), y' = v sin(theta),
/// theta' = w, under a constant control.
DriveState rk4_step(const DriveState& s, const DriveControl& u, double dt);

struct SteerOutcome {
    std::vector<DriveState> traj;  // includes the start state
    DriveState end;
    DriveControl control;
    double cost = 0.0;             // arc length |v| * duration
};

/// Integrate every control on the grid for `duration`, discard trajectories
/// that collide (per-step point check plus segment check between consecutive
/// states), and return the survivor whose endpoint is nearest to `toward`.
/// nullopt when every control collides. Deterministic.
std::optional<SteerOutcome> steer(const DriveState& from, const State& toward,
                                  const DriveModel& model, const Environment& env);

/// Validity meter for integrated trajectories: max over consecutive pairs of
/// |sin(th) dx - cos(th) dy| with th the circular midpoint heading.
double constraint_residual(const std::vector<DriveState>& traj);

}  // namespace prrtstar
