#include "prrtstar/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <memory>
#include <random>

namespace prrtstar {

VertexId Tree::add_root(State s, bool goal_flag) {
    states.push_back(std::move(s));
    parent.push_back(kNoVertex);
    cost.push_back(0.0);
    edge_cost.push_back(0.0);
    children.emplace_back();
    in_goal.push_back(goal_flag);
    refresh_goal_tracking(0);
    return 0;
}

VertexId Tree::add_vertex(State s, VertexId parent_id, double edge, bool goal_flag) {
    const VertexId id = static_cast<VertexId>(states.size());
    states.push_back(std::move(s));
    parent.push_back(parent_id);
    cost.push_back(cost[parent_id] + edge);
    edge_cost.push_back(edge);
    children.emplace_back();
    children[parent_id].push_back(id);
    in_goal.push_back(goal_flag);
    refresh_goal_tracking(id);
    return id;
}

void Tree::reparent(VertexId v, VertexId new_parent, double edge) {
    auto& siblings = children[parent[v]];
    siblings.erase(std::find(siblings.begin(), siblings.end(), v));
    parent[v] = new_parent;
    edge_cost[v] = edge;
    children[new_parent].push_back(v);

    // depth-first cost refresh through the moved subtree
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        cost[u] = cost[parent[u]] + edge_cost[u];
        refresh_goal_tracking(u);
        for (VertexId c : children[u]) stack.push_back(c);
    }
}

void Tree::refresh_goal_tracking(VertexId v) {
    if (in_goal[v] && cost[v] < best_goal_cost) {
        best_goal_cost = cost[v];
        best_goal_vertex = v;
    }
}

std::size_t node_bytes(std::size_t dim) {
    // coordinates + parent link + cost-to-come + edge cost + index entry
    return dim * sizeof(double) + sizeof(VertexId) + 2 * sizeof(double) +
           sizeof(VertexId) + dim * sizeof(double);
}

PathResult extend_to(const State& x1, const State& x2) {
    PathResult p;
    p.states = {x1, x2};
    p.cost = distance(x1, x2);
    return p;
}

CandidateTuple get_tuple(const State& x, const std::vector<VertexId>& near,
                         const Tree& tree) {
    CandidateTuple tuple;
    tuple.entries.reserve(near.size());
    for (VertexId v : near) {
        const double edge = distance(tree.states[v], x);
        tuple.entries.push_back({v, tree.cost[v] + edge, edge});
    }
    std::sort(tuple.entries.begin(), tuple.entries.end(),
              [](const Candidate& a, const Candidate& b) {
                  if (a.cost_through != b.cost_through) return a.cost_through < b.cost_through;
                  return a.vertex < b.vertex;
              });
    return tuple;
}

std::optional<Candidate> select_best_parent(const CandidateTuple& tuple, const State& x,
                                            const Tree& tree, const SegmentPredicate& is_free) {
    for (const Candidate& c : tuple.entries) {
        if (is_free(tree.states[c.vertex], x)) return c;
    }
    return std::nullopt;
}

std::optional<Candidate> select_best_parent(const CandidateTuple& tuple, const State& x,
                                            const Tree& tree, const Environment& env) {
    return select_best_parent(tuple, x, tree, [&env](const State& a, const State& b) {
        return segment_free(env, a, b);
    });
}

void rewire(VertexId x_new, const CandidateTuple& tuple, Tree& tree,
            const SegmentPredicate& is_free) {
    for (const Candidate& c : tuple.entries) {
        if (c.vertex == x_new) continue;
        // live tree costs: earlier reparents in this pass may already have
        // lowered c.vertex through a shared subtree
        const double through = tree.cost[x_new] + c.edge_cost;
        if (through < tree.cost[c.vertex] &&
            is_free(tree.states[x_new], tree.states[c.vertex])) {
            tree.reparent(c.vertex, x_new, c.edge_cost);
        }
    }
}

void rewire(VertexId x_new, const CandidateTuple& tuple, Tree& tree,
            const Environment& env) {
    rewire(x_new, tuple, tree, [&env](const State& a, const State& b) {
        return segment_free(env, a, b);
    });
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

class UniformSampler {
public:
    UniformSampler(const Environment& env, std::uint64_t seed, double goal_bias)
        : env_(env), rng_(seed), goal_bias_(goal_bias) {}

    // Uniform over X_free by rejection over the bounds box; the goal-bias
    // draw, when enabled, short-circuits to the goal center.
    State operator()() {
        if (goal_bias_ > 0.0 && next_double() < goal_bias_ &&
            point_free(env_, env_.goal_center)) {
            return env_.goal_center;
        }
        State x(env_.dim());
        for (int attempt = 0; attempt < 1000000; ++attempt) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double lo = env_.bounds.min_corner[i];
                const double hi = env_.bounds.max_corner[i];
                x[i] = lo + (hi - lo) * next_double();
            }
            if (point_free(env_, x)) return x;
        }
        throw std::runtime_error("plan: no free sample found in 1e6 rejection attempts "
                                 "(degenerate environment)");
    }

private:
    double next_double() {
        // 53-bit mantissa draw in [0, 1); bit-stable across platforms
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    const Environment& env_;
    std::mt19937_64 rng_;
    double goal_bias_;
};

struct LoopState {
    Tree tree;
    SpatialIndex index;
    RunMetrics metrics;
    double conv_threshold = 0.0;

    LoopState(std::size_t dim, SpatialIndex::Backend backend) : index(dim, backend) {}
};

double resolve_gamma(const Environment& env, const PlannerConfig& cfg) {
    const double gs = gamma_star(env, env.dim());
    if (cfg.gamma <= 0.0) return 1.1 * gs;
    if (cfg.gamma <= gs && cfg.warn_small_gamma) {
        std::cerr << "warning: gamma=" << cfg.gamma << " <= gamma_star=" << gs
                  << "; the shrinking-radius optimality bound does not apply\n";
    }
    return cfg.gamma;
}

// Shared per-iteration bookkeeping: history, first-path / convergence events,
// stop conditions. Returns true when the loop should stop.
bool finish_iteration(LoopState& ls, const PlannerConfig& cfg, std::uint64_t iter,
                      Clock::time_point t0, double& best_seen) {
    const double best = ls.tree.best_goal_cost;
    if (best < best_seen) {
        best_seen = best;
        if (!ls.metrics.iters_first) {
            ls.metrics.iters_first = iter;
            ls.metrics.time_first = seconds_since(t0);
        }
        ls.metrics.cost_history.emplace_back(iter, best);
        if (ls.conv_threshold > 0.0 && !ls.metrics.iters_opt && best <= ls.conv_threshold) {
            ls.metrics.iters_opt = iter;
            ls.metrics.time_opt = seconds_since(t0);
        }
    }
    if (cfg.record_window > 0 && iter % cfg.record_window == 0) {
        ls.metrics.window_times.push_back(seconds_since(t0));
    }
    if (cfg.stop_at_first_path && ls.metrics.iters_first) return true;
    if (cfg.stop_on_converged && ls.metrics.iters_opt) return true;
    if (cfg.node_cap > 0 && ls.tree.size() >= cfg.node_cap) return true;
    return false;
}

void finalize_metrics(LoopState& ls, std::uint64_t iters_done, Clock::time_point t0) {
    ls.metrics.iterations = iters_done;
    ls.metrics.total_time = seconds_since(t0);
    ls.metrics.node_count = ls.tree.size();
    if (ls.tree.best_goal_vertex != kNoVertex) {
        ls.metrics.final_cost = ls.tree.best_goal_cost;
    }
}

using SampleSource = std::function<std::optional<State>()>;

PlanResult plan_holonomic(const Environment& env, const PlannerConfig& cfg,
                          SampleSource next_sample) {
    LoopState ls(env.dim(), cfg.index_backend);
    const double gamma = resolve_gamma(env, cfg);
    if (cfg.variant == Variant::kPRrtStar) cfg.rgd.validate();

    ls.conv_threshold = cfg.conv_cost_threshold;
    ls.tree.add_root(env.start, env.in_goal(env.start));
    ls.index.insert(env.start, 0);

    double best_seen = std::numeric_limits<double>::infinity();
    const auto t0 = Clock::now();
    std::uint64_t iter = 0;
    while (iter < cfg.max_iters) {
        ++iter;
        auto drawn = next_sample();
        if (!drawn) {
            --iter;
            break;
        }
        State x = std::move(*drawn);
        if (cfg.variant == Variant::kPRrtStar) {
            x = rgd(x, env, env.goal_center, cfg.rgd);
        }
        if (cfg.max_edge_length > 0.0) {
            const VertexId nn = *ls.index.nearest(x);
            const double d = distance(ls.tree.states[nn], x);
            if (d > cfg.max_edge_length) {
                const double s = cfg.max_edge_length / d;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    x[i] = ls.tree.states[nn][i] + s * (x[i] - ls.tree.states[nn][i]);
                }
                if (!point_free(env, x)) {
                    if (finish_iteration(ls, cfg, iter, t0, best_seen)) break;
                    continue;
                }
            }
        }

        const double r = near_radius(ls.tree.size(), gamma, env.dim());
        std::vector<VertexId> near = ls.index.within(x, r);
        if (near.empty()) {
            near.push_back(*ls.index.nearest(x));
        }
        const CandidateTuple tuple = get_tuple(x, near, ls.tree);
        const auto parent = select_best_parent(tuple, x, ls.tree, env);
        if (parent) {
            const VertexId id = ls.tree.add_vertex(x, parent->vertex, parent->edge_cost,
                                                   env.in_goal(x));
            ls.index.insert(ls.tree.states[id], id);
            rewire(id, tuple, ls.tree, env);
        }
        if (finish_iteration(ls, cfg, iter, t0, best_seen)) break;
    }
    finalize_metrics(ls, iter, t0);
    return {std::move(ls.tree), std::move(ls.metrics)};
}

PlanResult plan_diffdrive(const Environment& env, const PlannerConfig& cfg,
                          SampleSource next_sample) {
    if (env.dim() != 2) {
        throw std::invalid_argument("differential-drive steering requires a 2D world");
    }
    cfg.drive.validate();
    LoopState ls(env.dim(), cfg.index_backend);
    const double gamma = resolve_gamma(env, cfg);
    if (cfg.variant == Variant::kPRrtStar) cfg.rgd.validate();

    ls.conv_threshold = cfg.conv_cost_threshold;
    ls.tree.theta.push_back(cfg.start_theta);
    ls.tree.control.push_back({});
    ls.tree.add_root(env.start, env.in_goal(env.start));
    ls.index.insert(env.start, 0);

    double best_seen = std::numeric_limits<double>::infinity();
    const auto t0 = Clock::now();
    std::uint64_t iter = 0;
    while (iter < cfg.max_iters) {
        ++iter;
        auto drawn = next_sample();
        if (!drawn) {
            --iter;
            break;
        }
        State x = std::move(*drawn);
        if (cfg.variant == Variant::kPRrtStar) {
            x = rgd(x, env, env.goal_center, cfg.rgd);
        }

        const double r = near_radius(ls.tree.size(), gamma, env.dim());
        std::vector<VertexId> near = ls.index.within(x, r);
        if (near.empty()) {
            near.push_back(*ls.index.nearest(x));
        }
        // candidates ordered by cost-to-come plus the straight-line lower
        // bound on the steering cost; steer down the list until one extends
        const CandidateTuple tuple = get_tuple(x, near, ls.tree);
        for (const Candidate& c : tuple.entries) {
            const DriveState from{ls.tree.states[c.vertex][0], ls.tree.states[c.vertex][1],
                                  ls.tree.theta[c.vertex]};
            const auto steered = steer(from, x, cfg.drive, env);
            if (!steered) continue;
            ls.tree.theta.push_back(steered->end.theta);
            ls.tree.control.push_back(steered->control);
            const VertexId id = ls.tree.add_vertex(steered->end.position(), c.vertex,
                                                   steered->cost,
                                                   env.in_goal(steered->end.position()));
            ls.index.insert(ls.tree.states[id], id);
            // no rewiring: the grid steer cannot reconnect through exact
            // states, so reparenting would break stored trajectories
            break;
        }
        if (finish_iteration(ls, cfg, iter, t0, best_seen)) break;
    }
    finalize_metrics(ls, iter, t0);
    return {std::move(ls.tree), std::move(ls.metrics)};
}

PlanResult plan_apf(const Environment& env, const PlannerConfig& cfg) {
    LoopState ls(env.dim(), cfg.index_backend);
    ls.conv_threshold = cfg.conv_cost_threshold;

    const auto t0 = Clock::now();
    const DescentResult descent = gradient_descent(env, cfg.apf);
    ls.tree.add_root(descent.path.front(), env.in_goal(descent.path.front()));
    for (std::size_t i = 1; i < descent.path.size(); ++i) {
        const double edge = distance(descent.path[i - 1], descent.path[i]);
        ls.tree.add_vertex(descent.path[i], static_cast<VertexId>(i - 1), edge,
                           env.in_goal(descent.path[i]));
    }
    const std::uint64_t steps = descent.path.size() - 1;
    if (descent.outcome == DescentOutcome::kReachedGoal) {
        ls.metrics.iters_first = steps;
        ls.metrics.time_first = seconds_since(t0);
        ls.metrics.cost_history.emplace_back(steps, ls.tree.best_goal_cost);
        if (ls.conv_threshold > 0.0 && ls.tree.best_goal_cost <= ls.conv_threshold) {
            ls.metrics.iters_opt = steps;
            ls.metrics.time_opt = ls.metrics.time_first;
        }
    }
    finalize_metrics(ls, steps, t0);
    ls.metrics.failed = descent.outcome != DescentOutcome::kReachedGoal;
    return {std::move(ls.tree), std::move(ls.metrics)};
}

PlanResult plan_impl(const Environment& env, const PlannerConfig& cfg,
                     SampleSource next_sample) {
    env.validate();
    if (cfg.variant == Variant::kApf) return plan_apf(env, cfg);
    if (cfg.steering == SteeringKind::kDifferentialDrive) {
        return plan_diffdrive(env, cfg, std::move(next_sample));
    }
    return plan_holonomic(env, cfg, std::move(next_sample));
}

}  // namespace

PlanResult plan(const Environment& env, const PlannerConfig& cfg) {
    auto sampler = std::make_shared<UniformSampler>(env, cfg.seed, cfg.goal_bias);
    return plan_impl(env, cfg, [sampler]() -> std::optional<State> { return (*sampler)(); });
}

PlanResult plan_with_samples(const Environment& env, const PlannerConfig& cfg,
                             const std::vector<State>& samples) {
    auto next = std::make_shared<std::size_t>(0);
    return plan_impl(env, cfg, [&samples, next]() -> std::optional<State> {
        if (*next >= samples.size()) return std::nullopt;
        return samples[(*next)++];
    });
}

std::optional<PathResult> best_path(const Tree& tree, const Environment& env) {
    VertexId best = kNoVertex;
    double best_cost = std::numeric_limits<double>::infinity();
    for (VertexId v = 0; v < tree.size(); ++v) {
        if (env.in_goal(tree.states[v]) &&
            (tree.cost[v] < best_cost || (tree.cost[v] == best_cost && v < best))) {
            best = v;
            best_cost = tree.cost[v];
        }
    }
    if (best == kNoVertex) return std::nullopt;
    PathResult out;
    out.cost = best_cost;
    for (VertexId v = best; v != kNoVertex; v = tree.parent[v]) {
        out.states.push_back(tree.states[v]);
    }
    std::reverse(out.states.begin(), out.states.end());
    return out;
}

std::optional<std::string> check_tree(const Tree& tree, const Environment& env,
                                      const DriveModel* drive) {
    if (tree.size() == 0) return "tree is empty";
    if (tree.parent[0] != kNoVertex || tree.cost[0] != 0.0) {
        return "root must have no parent and zero cost";
    }
    for (VertexId v = 1; v < tree.size(); ++v) {
        if (tree.parent[v] == kNoVertex) return "vertex " + std::to_string(v) + " is a second root";
        // acyclicity: parent ids are not required to be smaller after
        // rewiring, so walk with a step budget
        VertexId u = v;
        std::size_t hops = 0;
        while (u != 0) {
            u = tree.parent[u];
            if (++hops > tree.size()) return "cycle reached from vertex " + std::to_string(v);
        }
        const double expect = tree.cost[tree.parent[v]] + tree.edge_cost[v];
        if (std::abs(tree.cost[v] - expect) > 1e-9) {
            return "cost mismatch at vertex " + std::to_string(v);
        }
        if (drive == nullptr) {
            if (std::abs(tree.edge_cost[v] -
                         distance(tree.states[tree.parent[v]], tree.states[v])) > 1e-9) {
                return "edge cost is not the segment length at vertex " + std::to_string(v);
            }
            if (!segment_free(env, tree.states[tree.parent[v]], tree.states[v])) {
                return "edge into vertex " + std::to_string(v) + " collides";
            }
        } else {
            // re-integrate the stored control and compare endpoints
            const VertexId p = tree.parent[v];
            DriveState s{tree.states[p][0], tree.states[p][1], tree.theta[p]};
            const std::size_t n_steps =
                static_cast<std::size_t>(std::llround(drive->duration / drive->dt));
            std::vector<DriveState> traj{s};
            for (std::size_t k = 0; k < n_steps; ++k) {
                traj.push_back(rk4_step(traj.back(), tree.control[v], drive->dt));
            }
            const DriveState& e = traj.back();
            if (std::abs(e.x - tree.states[v][0]) > 1e-9 ||
                std::abs(e.y - tree.states[v][1]) > 1e-9) {
                return "stored control does not reproduce vertex " + std::to_string(v);
            }
            for (std::size_t k = 1; k < traj.size(); ++k) {
                if (!segment_free(env, traj[k - 1].position(), traj[k].position())) {
                    return "trajectory into vertex " + std::to_string(v) + " collides";
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace prrtstar
