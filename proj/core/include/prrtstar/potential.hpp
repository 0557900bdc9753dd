#pragma once

#include <cstdint>
#include <vector>

#include "prrtstar/geometry.hpp"

namespace prrtstar {

/// Force vector in the configuration space (d components).
using Force = std::vector<double>;

struct ApfConfig {
    double k_a = 1.0;         // attractive scale
    double k_r = 100.0;       // repulsive scale
    double d_g_star = 1.0;    // conic/quadratic switch radius
    double d_obs_star = 2.0;  // repulsion cutoff
    double lambda = 0.1;      // step size
    std::size_t max_steps = 10000;
    bool normalized = true;   // step lambda along the unit force; raw force if false

    /// Throws std::invalid_argument if a field is out of range or lambda is
    /// not small against the world (lambda < 0.1 * bounds diagonal).
    void validate(const Environment& env) const;
};

struct RgdConfig {
    std::size_t k = 90;        // loop limit; suitable range 80-100
    double lambda = 0.1;       // step size
    double d_obs_star = 0.1;   // clearance at which the descent stops
    bool normalized = true;    // unit-step mode; raw Eq. 8 force if false

    /// Throws on k outside [1, 1e4] or non-positive reals; warns on stderr
    /// for k outside [80, 100].
    void validate() const;
};

/// Attractive potential, quadratic beyond the switch radius and conic
/// inside it. Implemented exactly as printed, which makes it negative
/// near the goal and discontinuous at the switch; the force below is
/// what planners consume.
double att_potential(const State& x, const State& goal, const ApfConfig& cfg);

/// -grad att_potential, restored to a d-vector. Magnitude 2*K_a*d outside
/// the switch radius, K_a*d_g_star inside it; zero at the goal itself.
Force att_force(const State& x, const State& goal, const ApfConfig& cfg);

/// Repulsive potential: 0 beyond the cutoff, 0.5*K_r*(1/d_min - 1/d*obs)^2
/// inside it, +inf on obstacle contact.
double rep_potential(const Environment& env, const State& x, const ApfConfig& cfg);

/// -grad rep_potential; points away from the closest obstacle point.
/// Throws std::domain_error at d_min == 0.
Force rep_force(const Environment& env, const State& x, const ApfConfig& cfg);

enum class DescentOutcome : std::uint8_t {
    kReachedGoal,
    kLocalMinimum,
    kStepLimit,
};

struct DescentResult {
    std::vector<State> path;  // every iterate, starting at env.start
    DescentOutcome outcome = DescentOutcome::kStepLimit;
};

/// Artificial-potential-field descent from env.start: steps lambda along the
/// unit direction of F_att + F_rep (clamped to the remaining goal distance)
/// until the goal ball is entered, the force vanishes (|F| < 1e-6), the
/// iterate stalls in a trapped oscillation, or max_steps runs out. The two
/// no-progress cases both report kLocalMinimum.
DescentResult gradient_descent(const Environment& env, const ApfConfig& cfg);

/// Randomized gradient descent sampling heuristic: walks x_rand up to k
/// steps of size lambda straight down the pure quadratic attractive field
/// (no conic branch), stopping early as soon as the nearest obstacle is
/// within d_obs_star. Steps are clamped to the remaining goal distance; a
/// step that would leave free space is reverted and ends the walk.
/// Deterministic. Throws std::invalid_argument if x_rand is not free.
State rgd(const State& x_rand, const Environment& env, const State& goal,
          const RgdConfig& cfg);

}  // namespace prrtstar
