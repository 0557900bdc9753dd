#pragma once

#include "prrtstar/geometry.hpp"

namespace prrtstar {

/// Independent shortest-path estimate by Dijkstra over a uniform grid with
/// 8-connectivity (2D) / 26-connectivity (3D+); diagonal steps cost their
/// exact Euclidean length and corner cutting past blocked cells is not
/// allowed. Cells are blocked conservatively (any overlap with an obstacle),
/// so the estimate overshoots the true optimum by at most the octile metric
/// penalty (~8%) plus an O(resolution) inflation term.
///
/// Throws std::invalid_argument when the start or every goal cell is blocked
/// at this resolution, or when no grid path exists.
double grid_oracle_cost(const Environment& env, double resolution);

}  // namespace prrtstar
