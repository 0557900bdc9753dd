#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prrtstar/geometry.hpp"

namespace prrtstar {

using VertexId = std::uint32_t;

/// gamma(ln n / n)^(1/d) for n >= 2, 0 for n in {0, 1}. Natural log.
double near_radius(std::size_t n, double gamma, std::size_t dim);

/// Lower bound for the near-radius constant:
/// (2(1+1/d))^(1/d) * (mu(X)/zeta_B)^(1/d), with mu(X) standing in for
/// mu(X_free) from above.
double gamma_star(const Environment& env, std::size_t d);

struct NearParams {
    double gamma = 0.0;
    std::size_t dimension = 0;
};

/// Exact nearest-neighbor / fixed-radius index over tree vertices.
///
/// Backend is either an incrementally built kd-tree or a plain linear scan;
/// both return identical results (ties broken by lowest vertex id). The
/// planner owns one index per run: single writer, reads between insertions.
class SpatialIndex {
public:
    enum class Backend { kKdTree, kLinear };

    explicit SpatialIndex(std::size_t dim, Backend backend = Backend::kKdTree);

    /// Throws std::invalid_argument on duplicate id or dimension mismatch.
    void insert(const State& point, VertexId id);

    /// Argmin of Euclidean distance, ties to the lowest id.
    /// Empty index -> nullopt.
    std::optional<VertexId> nearest(const State& x) const;

    /// All entries with distance <= r (closed ball), ascending by id.
    std::vector<VertexId> within(const State& x, double r) const;

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return dim_; }

private:
    struct Node {
        std::int32_t left = -1;
        std::int32_t right = -1;
    };

    void nearest_rec(std::int32_t node, std::size_t depth, const State& x,
                     double& best_sq, VertexId& best_id) const;
    void within_rec(std::int32_t node, std::size_t depth, const State& x,
                    double r, double r_sq, std::vector<VertexId>& out) const;

    std::size_t dim_;
    Backend backend_;
    std::vector<State> points_;    // indexed by insertion order
    std::vector<VertexId> ids_;    // parallel to points_
    std::vector<Node> nodes_;      // kd links, parallel to points_
    std::int32_t root_ = -1;
    std::vector<bool> id_seen_;
};

}  // namespace prrtstar
