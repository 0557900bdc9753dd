#pragma once

#include <optional>
#include <string>

#include "prrtstar/planner.hpp"

namespace prrtstar {

struct SvgOptions {
    double width_px = 800.0;
    std::size_t axis_x = 0;  // projection axes for d > 2 worlds
    std::size_t axis_y = 1;
};

/// Deterministic SVG of the world, tree and best path: byte-identical output
/// for identical inputs. One line element per non-root vertex.
std::string render_svg(const Tree& tree, const Environment& env,
                       const std::optional<PathResult>& path,
                       const SvgOptions& opts = {});

void render_svg_file(const std::string& path_out, const Tree& tree, const Environment& env,
                     const std::optional<PathResult>& path, const SvgOptions& opts = {});

}  // namespace prrtstar
