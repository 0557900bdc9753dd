#include "prrtstar/svg.hpp"

#include <cstdarg>
#include <cstdio>
#include <fstream>

namespace prrtstar {

namespace {

struct Mapper {
    double scale, x0, y0, height;
    std::size_t ax, ay;

    double x(const State& s) const { return (s[ax] - x0) * scale; }
    double y(const State& s) const { return height - (s[ay] - y0) * scale; }
};

void appendf(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    out += buf;
}

}  // namespace

std::string render_svg(const Tree& tree, const Environment& env,
                       const std::optional<PathResult>& path, const SvgOptions& opts) {
    const std::size_t ax = opts.axis_x;
    const std::size_t ay = opts.axis_y;
    const double wx = env.bounds.max_corner[ax] - env.bounds.min_corner[ax];
    const double wy = env.bounds.max_corner[ay] - env.bounds.min_corner[ay];
    const double scale = opts.width_px / wx;
    Mapper m{scale, env.bounds.min_corner[ax], env.bounds.min_corner[ay], wy * scale, ax, ay};

    std::string out;
    appendf(out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.3f\" height=\"%.3f\" "
            "viewBox=\"0 0 %.3f %.3f\">\n",
            opts.width_px, m.height, opts.width_px, m.height);
    appendf(out, "<rect x=\"0\" y=\"0\" width=\"%.3f\" height=\"%.3f\" fill=\"#ffffff\" "
                 "stroke=\"#222222\"/>\n",
            opts.width_px, m.height);

    for (const Aabb& o : env.obstacles) {
        const double rx = (o.min_corner[ax] - m.x0) * scale;
        const double ry = m.height - (o.max_corner[ay] - m.y0) * scale;
        appendf(out, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" "
                     "fill=\"#8a8a8a\"/>\n",
                rx, ry, (o.max_corner[ax] - o.min_corner[ax]) * scale,
                (o.max_corner[ay] - o.min_corner[ay]) * scale);
    }

    for (VertexId v = 1; v < tree.size(); ++v) {
        const State& a = tree.states[tree.parent[v]];
        const State& b = tree.states[v];
        appendf(out, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" "
                     "stroke=\"#3b6ea5\" stroke-width=\"0.5\"/>\n",
                m.x(a), m.y(a), m.x(b), m.y(b));
    }

    if (path && path->states.size() >= 2) {
        out += "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < path->states.size(); ++i) {
            appendf(out, i ? " %.3f,%.3f" : "%.3f,%.3f", m.x(path->states[i]),
                    m.y(path->states[i]));
        }
        out += "\"/>\n";
    }

    const double gr = env.goal_radius * scale;
    appendf(out, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" "
                 "stroke=\"#27ae60\" stroke-width=\"1.5\"/>\n",
            m.x(env.goal_center), m.y(env.goal_center), gr);
    appendf(out, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"#27ae60\"/>\n",
            m.x(env.goal_center), m.y(env.goal_center));
    appendf(out, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"#e67e22\"/>\n",
            m.x(env.start), m.y(env.start));
    out += "</svg>\n";
    return out;
}

void render_svg_file(const std::string& path_out, const Tree& tree, const Environment& env,
                     const std::optional<PathResult>& path, const SvgOptions& opts) {
    std::ofstream f(path_out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open SVG output file: " + path_out);
    f << render_svg(tree, env, path, opts);
}

}  // namespace prrtstar
