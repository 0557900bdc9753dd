#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "prrtstar/geometry.hpp"
#include "prrtstar/kinodynamic.hpp"
#include "prrtstar/potential.hpp"
#include "prrtstar/spatial_index.hpp"

namespace prrtstar {

inline constexpr VertexId kNoVertex = 0xffffffffu;

/// Rooted planning tree. Vertices are stored in insertion order; the root is
/// vertex 0 with cost 0. Costs are kept exact against parent links: every
/// reparenting propagates through the affected subtree.
struct Tree {
    std::vector<State> states;
    std::vector<VertexId> parent;       // kNoVertex for the root
    std::vector<double> cost;           // cost-to-come
    std::vector<double> edge_cost;      // cost of the edge from parent
    std::vector<std::vector<VertexId>> children;
    std::vector<bool> in_goal;

    // differential-drive extras; empty for holonomic trees
    std::vector<double> theta;
    std::vector<DriveControl> control;

    double best_goal_cost = std::numeric_limits<double>::infinity();
    VertexId best_goal_vertex = kNoVertex;

    std::size_t size() const { return states.size(); }

    VertexId add_root(State s, bool goal_flag);
    VertexId add_vertex(State s, VertexId parent_id, double edge, bool goal_flag);

    /// Reparent v onto new_parent with the given edge cost and push the cost
    /// change through v's subtree. Requires the move to be cost-decreasing.
    void reparent(VertexId v, VertexId new_parent, double edge);

private:
    void refresh_goal_tracking(VertexId v);
};

enum class Variant : std::uint8_t { kRrtStar, kPRrtStar, kApf };
enum class SteeringKind : std::uint8_t { kHolonomic, kDifferentialDrive };

struct PlannerConfig {
    Variant variant = Variant::kRrtStar;
    double gamma = 0.0;          // <= 0 selects 1.1 * gamma_star(env, d)
    std::uint64_t max_iters = 10000;
    RgdConfig rgd;               // used iff variant == kPRrtStar
    ApfConfig apf;               // used iff variant == kApf
    std::uint64_t seed = 0;
    double goal_bias = 0.0;      // [0, 1); 0 by default, ablation knob only
    SteeringKind steering = SteeringKind::kHolonomic;
    DriveModel drive;
    double start_theta = 0.0;

    // run control
    std::size_t node_cap = 0;           // 0 = unlimited
    double conv_cost_threshold = 0.0;   // absolute cost; 0 = not tracked
    bool stop_on_converged = false;
    bool stop_at_first_path = false;
    double max_edge_length = 0.0;       // 0 = no truncation (default)
    std::uint64_t record_window = 0;    // iterations per timing window; 0 = off
    bool warn_small_gamma = true;
    SpatialIndex::Backend index_backend = SpatialIndex::Backend::kKdTree;
};

struct RunMetrics {
    std::optional<std::uint64_t> iters_first;  // iteration of first feasible path
    double time_first = 0.0;                   // seconds, loop-relative
    std::optional<std::uint64_t> iters_opt;    // iteration the convergence threshold was met
    double time_opt = 0.0;
    std::vector<std::pair<std::uint64_t, double>> cost_history;  // (iteration, best cost)
    std::optional<double> final_cost;
    std::size_t node_count = 0;
    bool failed = false;

    std::uint64_t iterations = 0;   // iterations actually executed
    double total_time = 0.0;        // seconds around the iteration loop
    std::vector<double> window_times;  // cumulative seconds at record_window boundaries
};

/// Bytes charged per tree vertex in memory reports: d coordinates plus
/// parent link, cost-to-come, edge cost and one index entry.
std::size_t node_bytes(std::size_t dim);

struct Candidate {
    VertexId vertex;
    double cost_through;  // c(x') + c(tau)
    double edge_cost;     // c(tau)
};

/// Near candidates sorted ascending by (cost_through, vertex id).
struct CandidateTuple {
    std::vector<Candidate> entries;
};

struct PathResult {
    std::vector<State> states;  // root first
    double cost = 0.0;
};

using SegmentPredicate = std::function<bool(const State&, const State&)>;

/// The straight path between two states; its cost is the Euclidean distance.
PathResult extend_to(const State& x1, const State& x2);

CandidateTuple get_tuple(const State& x, const std::vector<VertexId>& near,
                         const Tree& tree);

/// First candidate whose connecting segment to x passes is_free; checks stop
/// at the first success. nullopt when every candidate is blocked.
std::optional<Candidate> select_best_parent(const CandidateTuple& tuple, const State& x,
                                            const Tree& tree, const SegmentPredicate& is_free);
std::optional<Candidate> select_best_parent(const CandidateTuple& tuple, const State& x,
                                            const Tree& tree, const Environment& env);

/// Algorithm-4 rewiring pass: route each candidate through x_new when that is
/// strictly cheaper and collision-free, propagating cost updates to
/// descendants.
void rewire(VertexId x_new, const CandidateTuple& tuple, Tree& tree,
            const SegmentPredicate& is_free);
void rewire(VertexId x_new, const CandidateTuple& tuple, Tree& tree,
            const Environment& env);

struct PlanResult {
    Tree tree;
    RunMetrics metrics;
};

/// Run the configured planner on env. Seeded and deterministic: identical
/// (env, cfg) produce identical trees and metrics (times excepted).
/// Throws std::runtime_error if no free sample can be drawn in 1e6 attempts.
PlanResult plan(const Environment& env, const PlannerConfig& cfg);

/// Deterministic-replay variant: iteration i consumes samples[i] in place of
/// the RNG draw; the run stops when samples are exhausted. Everything else
/// (RGD, near sets, rewiring) behaves exactly as in plan().
PlanResult plan_with_samples(const Environment& env, const PlannerConfig& cfg,
                             const std::vector<State>& samples);

/// Minimum-cost goal-ball vertex walked back to the root; nullopt when the
/// tree does not reach the goal.
std::optional<PathResult> best_path(const Tree& tree, const Environment& env);

/// Check the four tree invariants (single root, acyclicity, cost consistency
/// within 1e-9, collision-free edges). Returns an explanation on failure.
std::optional<std::string> check_tree(const Tree& tree, const Environment& env,
                                      const DriveModel* drive = nullptr);

}  // namespace prrtstar
