#include "prrtstar/grid_oracle.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace prrtstar {

namespace {

struct Grid {
    std::size_t dim;
    double res;
    State origin;
    std::vector<std::size_t> shape;   // cells per axis
    std::vector<std::size_t> stride;  // linear index strides
    std::vector<bool> blocked;

    std::size_t cell_count() const { return blocked.size(); }

    std::size_t linear(const std::vector<std::size_t>& idx) const {
        std::size_t k = 0;
        for (std::size_t a = 0; a < dim; ++a) k += idx[a] * stride[a];
        return k;
    }

    std::vector<std::size_t> cell_of(const State& x) const {
        std::vector<std::size_t> idx(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            const double f = (x[a] - origin[a]) / res;
            const auto i = static_cast<long long>(std::floor(f));
            idx[a] = static_cast<std::size_t>(
                std::min<long long>(std::max<long long>(i, 0),
                                    static_cast<long long>(shape[a]) - 1));
        }
        return idx;
    }

    State center_of(const std::vector<std::size_t>& idx) const {
        State c(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            c[a] = origin[a] + (static_cast<double>(idx[a]) + 0.5) * res;
        }
        return c;
    }
};

bool boxes_overlap(const State& a_lo, const State& a_hi, const Aabb& b) {
    for (std::size_t i = 0; i < a_lo.size(); ++i) {
        if (a_hi[i] < b.min_corner[i] || a_lo[i] > b.max_corner[i]) return false;
    }
    return true;
}

Grid build_grid(const Environment& env, double resolution) {
    Grid g;
    g.dim = env.dim();
    g.res = resolution;
    g.origin = env.bounds.min_corner;
    g.shape.resize(g.dim);
    std::size_t total = 1;
    for (std::size_t a = 0; a < g.dim; ++a) {
        const double extent = env.bounds.max_corner[a] - env.bounds.min_corner[a];
        g.shape[a] = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(extent / resolution)));
        total *= g.shape[a];
    }
    g.stride.resize(g.dim);
    std::size_t s = 1;
    for (std::size_t a = 0; a < g.dim; ++a) {
        g.stride[a] = s;
        s *= g.shape[a];
    }
    g.blocked.assign(total, false);

    std::vector<std::size_t> idx(g.dim, 0);
    State lo(g.dim), hi(g.dim);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rem = k;
        for (std::size_t a = 0; a < g.dim; ++a) {
            idx[a] = rem % g.shape[a];
            rem /= g.shape[a];
        }
        for (std::size_t a = 0; a < g.dim; ++a) {
            lo[a] = g.origin[a] + static_cast<double>(idx[a]) * g.res;
            hi[a] = lo[a] + g.res;
        }
        for (const Aabb& o : env.obstacles) {
            if (boxes_overlap(lo, hi, o)) {
                g.blocked[k] = true;
                break;
            }
        }
    }
    return g;
}

}  // namespace

double grid_oracle_cost(const Environment& env, double resolution) {
    if (!(resolution > 0.0)) {
        throw std::invalid_argument("grid_oracle_cost: resolution must be positive");
    }
    const Grid g = build_grid(env, resolution);
    const std::size_t d = g.dim;

    const std::size_t start_cell = g.linear(g.cell_of(env.start));
    if (g.blocked[start_cell]) {
        throw std::invalid_argument("grid_oracle_cost: start cell blocked at this resolution");
    }

    // goal set: free cells whose center lies in the goal ball
    std::vector<bool> is_goal(g.cell_count(), false);
    bool any_goal = false;
    {
        std::vector<std::size_t> idx(d, 0);
        for (std::size_t k = 0; k < g.cell_count(); ++k) {
            std::size_t rem = k;
            for (std::size_t a = 0; a < d; ++a) {
                idx[a] = rem % g.shape[a];
                rem /= g.shape[a];
            }
            if (!g.blocked[k] && env.in_goal(g.center_of(idx))) {
                is_goal[k] = true;
                any_goal = true;
            }
        }
    }
    if (!any_goal) {
        throw std::invalid_argument("grid_oracle_cost: no free goal cell at this resolution");
    }

    // neighbor offsets: all of {-1,0,1}^d minus the origin
    std::vector<std::vector<int>> offsets;
    {
        std::vector<int> off(d, -1);
        for (;;) {
            bool all_zero = true;
            for (int v : off) all_zero &= (v == 0);
            if (!all_zero) offsets.push_back(off);
            std::size_t a = 0;
            while (a < d && off[a] == 1) off[a++] = -1;
            if (a == d) break;
            ++off[a];
        }
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.cell_count(), kInf);
    using QE = std::pair<double, std::size_t>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    dist[start_cell] = 0.0;
    pq.emplace(0.0, start_cell);

    std::vector<std::size_t> idx(d), nidx(d);
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > dist[u]) continue;
        if (is_goal[u]) return du;

        std::size_t rem = u;
        for (std::size_t a = 0; a < d; ++a) {
            idx[a] = rem % g.shape[a];
            rem /= g.shape[a];
        }
        for (const auto& off : offsets) {
            bool ok = true;
            int changed = 0;
            for (std::size_t a = 0; a < d; ++a) {
                const long long v = static_cast<long long>(idx[a]) + off[a];
                if (v < 0 || v >= static_cast<long long>(g.shape[a])) {
                    ok = false;
                    break;
                }
                nidx[a] = static_cast<std::size_t>(v);
                changed += off[a] != 0;
            }
            if (!ok) continue;
            const std::size_t vcell = g.linear(nidx);
            if (g.blocked[vcell]) continue;
            // no corner cutting: every single-axis projection of a diagonal
            // move must itself be free
            if (changed > 1) {
                bool clipped = false;
                for (std::size_t a = 0; a < d && !clipped; ++a) {
                    if (off[a] == 0) continue;
                    std::size_t side = u + static_cast<std::size_t>(
                                               static_cast<long long>(g.stride[a]) * off[a]);
                    if (g.blocked[side]) clipped = true;
                }
                if (clipped) continue;
            }
            const double w = g.res * std::sqrt(static_cast<double>(changed));
            if (du + w < dist[vcell]) {
                dist[vcell] = du + w;
                pq.emplace(dist[vcell], vcell);
            }
        }
    }
    throw std::invalid_argument("grid_oracle_cost: goal unreachable on the grid");
}

}  // namespace prrtstar
