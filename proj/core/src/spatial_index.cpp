#include "prrtstar/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace prrtstar {

double near_radius(std::size_t n, double gamma, std::size_t dim) {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    return gamma * std::pow(std::log(nn) / nn, 1.0 / static_cast<double>(dim));
}

double gamma_star(const Environment& env, std::size_t d) {
    const double dd = static_cast<double>(d);
    const double a = std::pow(2.0 * (1.0 + 1.0 / dd), 1.0 / dd);
    const double b = std::pow(free_measure(env) / unit_ball_volume(d), 1.0 / dd);
    return a * b;
}

SpatialIndex::SpatialIndex(std::size_t dim, Backend backend)
    : dim_(dim), backend_(backend) {}

void SpatialIndex::insert(const State& point, VertexId id) {
    if (point.size() != dim_) {
        throw std::invalid_argument("SpatialIndex::insert: dimension mismatch");
    }
    if (id < id_seen_.size() && id_seen_[id]) {
        throw std::invalid_argument("SpatialIndex::insert: duplicate vertex id");
    }
    if (id >= id_seen_.size()) id_seen_.resize(id + 1, false);
    id_seen_[id] = true;

    const std::int32_t idx = static_cast<std::int32_t>(points_.size());
    points_.push_back(point);
    ids_.push_back(id);
    nodes_.emplace_back();

    if (backend_ == Backend::kLinear) return;

    if (root_ < 0) {
        root_ = idx;
        return;
    }
    std::int32_t cur = root_;
    std::size_t depth = 0;
    for (;;) {
        const std::size_t axis = depth % dim_;
        std::int32_t& next = (point[axis] < points_[cur][axis]) ? nodes_[cur].left
                                                                : nodes_[cur].right;
        if (next < 0) {
            next = idx;
            return;
        }
        cur = next;
        ++depth;
    }
}

std::optional<VertexId> SpatialIndex::nearest(const State& x) const {
    if (points_.empty()) return std::nullopt;
    double best_sq = std::numeric_limits<double>::infinity();
    VertexId best_id = 0;
    if (backend_ == Backend::kLinear) {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const double d2 = squared_distance(x, points_[i]);
            if (d2 < best_sq || (d2 == best_sq && ids_[i] < best_id)) {
                best_sq = d2;
                best_id = ids_[i];
            }
        }
    } else {
        nearest_rec(root_, 0, x, best_sq, best_id);
    }
    return best_id;
}

void SpatialIndex::nearest_rec(std::int32_t node, std::size_t depth, const State& x,
                               double& best_sq, VertexId& best_id) const {
    if (node < 0) return;
    const double d2 = squared_distance(x, points_[node]);
    if (d2 < best_sq || (d2 == best_sq && ids_[node] < best_id)) {
        best_sq = d2;
        best_id = ids_[node];
    }
    const std::size_t axis = depth % dim_;
    const double delta = x[axis] - points_[node][axis];
    const std::int32_t near_side = (delta < 0.0) ? nodes_[node].left : nodes_[node].right;
    const std::int32_t far_side = (delta < 0.0) ? nodes_[node].right : nodes_[node].left;
    nearest_rec(near_side, depth + 1, x, best_sq, best_id);
    // the far half-space can still hold an equal-distance lower id, so prune
    // with <= rather than <
    if (delta * delta <= best_sq) {
        nearest_rec(far_side, depth + 1, x, best_sq, best_id);
    }
}

std::vector<VertexId> SpatialIndex::within(const State& x, double r) const {
    std::vector<VertexId> out;
    const double r_sq = r * r;
    if (backend_ == Backend::kLinear) {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (squared_distance(x, points_[i]) <= r_sq) out.push_back(ids_[i]);
        }
    } else {
        within_rec(root_, 0, x, r, r_sq, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void SpatialIndex::within_rec(std::int32_t node, std::size_t depth, const State& x,
                              double r, double r_sq, std::vector<VertexId>& out) const {
    if (node < 0) return;
    if (squared_distance(x, points_[node]) <= r_sq) out.push_back(ids_[node]);
    const std::size_t axis = depth % dim_;
    const double delta = x[axis] - points_[node][axis];
    if (delta - r <= 0.0) within_rec(nodes_[node].left, depth + 1, x, r, r_sq, out);
    if (delta + r >= 0.0) within_rec(nodes_[node].right, depth + 1, x, r, r_sq, out);
}

}  // namespace prrtstar
