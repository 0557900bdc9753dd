#include "prrtstar/scenario.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace prrtstar {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_point(const State& x) {
    std::string out = "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ", ";
        out += fmt_double(x[i]);
    }
    out += "]";
    return out;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

State parse_point(const json& j, const std::string& field, std::size_t dim) {
    if (!j.is_array() || (dim != 0 && j.size() != dim)) {
        throw ScenarioError(field + ": expected an array of " + std::to_string(dim) +
                            " numbers");
    }
    State out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ScenarioError(field + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Aabb parse_box(const json& j, const std::string& field, std::size_t dim) {
    if (!j.is_object() || !j.contains("min") || !j.contains("max")) {
        throw ScenarioError(field + ": expected an object with min/max");
    }
    try {
        return Aabb(parse_point(j["min"], field + ".min", dim),
                    parse_point(j["max"], field + ".max", dim));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(field + ": " + e.what());
    }
}

template <typename T>
void read_opt(const json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

bool ScenarioDefaults::empty() const {
    return !gamma && !goal_bias && !max_iters && !rgd_k && !rgd_lambda &&
           !rgd_d_obs_star && !steering && !start_theta && !drive_v_max &&
           !drive_w_max && !drive_dt && !drive_duration && !drive_control_grid;
}

void Scenario::apply_defaults(PlannerConfig& cfg) const {
    const ScenarioDefaults& d = defaults;
    if (d.gamma) cfg.gamma = *d.gamma;
    if (d.goal_bias) cfg.goal_bias = *d.goal_bias;
    if (d.max_iters) cfg.max_iters = *d.max_iters;
    if (d.rgd_k) cfg.rgd.k = static_cast<std::size_t>(*d.rgd_k);
    if (d.rgd_lambda) cfg.rgd.lambda = *d.rgd_lambda;
    if (d.rgd_d_obs_star) cfg.rgd.d_obs_star = *d.rgd_d_obs_star;
    if (d.steering) {
        cfg.steering = (*d.steering == "differential_drive")
                           ? SteeringKind::kDifferentialDrive
                           : SteeringKind::kHolonomic;
    }
    if (d.start_theta) cfg.start_theta = *d.start_theta;
    if (d.drive_v_max) cfg.drive.v_max = *d.drive_v_max;
    if (d.drive_w_max) cfg.drive.w_max = *d.drive_w_max;
    if (d.drive_dt) cfg.drive.dt = *d.drive_dt;
    if (d.drive_duration) cfg.drive.duration = *d.drive_duration;
    if (d.drive_control_grid) {
        cfg.drive.control_grid = static_cast<std::size_t>(*d.drive_control_grid);
    }
}

Scenario load_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ScenarioError("parse error at line " + std::to_string(line) + ", column " +
                            std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("document: expected a JSON object");
    if (!doc.contains("format_version") || doc["format_version"].get<int>() != 1) {
        throw ScenarioError("format_version: expected 1");
    }

    Scenario s;
    if (!doc.contains("name") || !doc["name"].is_string()) {
        throw ScenarioError("name: expected a string");
    }
    s.name = doc["name"].get<std::string>();
    if (!doc.contains("dimension") || !doc["dimension"].is_number_unsigned()) {
        throw ScenarioError("dimension: expected a positive integer");
    }
    s.dimension = doc["dimension"].get<std::size_t>();
    if (s.dimension < 2) throw ScenarioError("dimension: must be >= 2");

    if (!doc.contains("bounds")) throw ScenarioError("bounds: missing");
    Aabb bounds = parse_box(doc["bounds"], "bounds", s.dimension);
    State start = parse_point(doc.value("start", json::array()), "start", s.dimension);

    if (!doc.contains("goal") || !doc["goal"].is_object()) {
        throw ScenarioError("goal: expected an object with center/radius");
    }
    State goal_center = parse_point(doc["goal"].value("center", json::array()),
                                    "goal.center", s.dimension);
    if (!doc["goal"].contains("radius") || !doc["goal"]["radius"].is_number()) {
        throw ScenarioError("goal.radius: expected a number");
    }
    const double goal_radius = doc["goal"]["radius"].get<double>();

    std::vector<Aabb> obstacles;
    if (doc.contains("obstacles")) {
        if (!doc["obstacles"].is_array()) throw ScenarioError("obstacles: expected an array");
        std::size_t k = 0;
        for (const auto& o : doc["obstacles"]) {
            obstacles.push_back(parse_box(o, "obstacles[" + std::to_string(k) + "]", s.dimension));
            ++k;
        }
    }

    try {
        s.env = Environment(std::move(bounds), std::move(obstacles), std::move(start),
                            std::move(goal_center), goal_radius);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }

    if (doc.contains("defaults")) {
        const json& d = doc["defaults"];
        if (!d.is_object()) throw ScenarioError("defaults: expected an object");
        read_opt(d, "gamma", s.defaults.gamma);
        read_opt(d, "goal_bias", s.defaults.goal_bias);
        read_opt(d, "max_iters", s.defaults.max_iters);
        read_opt(d, "rgd_k", s.defaults.rgd_k);
        read_opt(d, "rgd_lambda", s.defaults.rgd_lambda);
        read_opt(d, "rgd_d_obs_star", s.defaults.rgd_d_obs_star);
        read_opt(d, "steering", s.defaults.steering);
        read_opt(d, "start_theta", s.defaults.start_theta);
        read_opt(d, "drive_v_max", s.defaults.drive_v_max);
        read_opt(d, "drive_w_max", s.defaults.drive_w_max);
        read_opt(d, "drive_dt", s.defaults.drive_dt);
        read_opt(d, "drive_duration", s.defaults.drive_duration);
        read_opt(d, "drive_control_grid", s.defaults.drive_control_grid);
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scenario_text(ss.str());
}

std::string save_scenario(const Scenario& s) {
    std::string out;
    out += "{\n";
    out += "  \"format_version\": 1,\n";
    out += "  \"name\": \"" + s.name + "\",\n";
    out += "  \"dimension\": " + std::to_string(s.dimension) + ",\n";
    out += "  \"bounds\": {\"min\": " + fmt_point(s.env.bounds.min_corner) +
           ", \"max\": " + fmt_point(s.env.bounds.max_corner) + "},\n";
    out += "  \"start\": " + fmt_point(s.env.start) + ",\n";
    out += "  \"goal\": {\"center\": " + fmt_point(s.env.goal_center) +
           ", \"radius\": " + fmt_double(s.env.goal_radius) + "},\n";
    out += "  \"obstacles\": [";
    for (std::size_t i = 0; i < s.env.obstacles.size(); ++i) {
        out += (i == 0) ? "\n" : ",\n";
        out += "    {\"min\": " + fmt_point(s.env.obstacles[i].min_corner) +
               ", \"max\": " + fmt_point(s.env.obstacles[i].max_corner) + "}";
    }
    out += s.env.obstacles.empty() ? "]" : "\n  ]";

    const ScenarioDefaults& d = s.defaults;
    if (!d.empty()) {
        out += ",\n  \"defaults\": {";
        bool first = true;
        const auto emit = [&](const char* key, const std::string& val) {
            out += first ? "\n" : ",\n";
            out += std::string("    \"") + key + "\": " + val;
            first = false;
        };
        if (d.gamma) emit("gamma", fmt_double(*d.gamma));
        if (d.goal_bias) emit("goal_bias", fmt_double(*d.goal_bias));
        if (d.max_iters) emit("max_iters", std::to_string(*d.max_iters));
        if (d.rgd_k) emit("rgd_k", std::to_string(*d.rgd_k));
        if (d.rgd_lambda) emit("rgd_lambda", fmt_double(*d.rgd_lambda));
        if (d.rgd_d_obs_star) emit("rgd_d_obs_star", fmt_double(*d.rgd_d_obs_star));
        if (d.steering) emit("steering", "\"" + *d.steering + "\"");
        if (d.start_theta) emit("start_theta", fmt_double(*d.start_theta));
        if (d.drive_v_max) emit("drive_v_max", fmt_double(*d.drive_v_max));
        if (d.drive_w_max) emit("drive_w_max", fmt_double(*d.drive_w_max));
        if (d.drive_dt) emit("drive_dt", fmt_double(*d.drive_dt));
        if (d.drive_duration) emit("drive_duration", fmt_double(*d.drive_duration));
        if (d.drive_control_grid) emit("drive_control_grid", std::to_string(*d.drive_control_grid));
        out += "\n  }";
    }
    out += "\n}\n";
    return out;
}

void save_scenario_file(const Scenario& s, const std::string& path) {
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw ScenarioError("cannot open output file: " + path);
    outf << save_scenario(s);
}

namespace {

Scenario make_scenario(std::string name, Aabb bounds, std::vector<Aabb> obstacles,
                       State start, State goal_center, double goal_radius) {
    Scenario s;
    s.name = std::move(name);
    s.dimension = bounds.dim();
    s.env = Environment(std::move(bounds), std::move(obstacles), std::move(start),
                        std::move(goal_center), goal_radius);
    return s;
}

// Small deterministic hash for reproducible obstacle jitter.
double jitter01(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a * 0x9e3779b97f4a7c15ull + b * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull;
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Scenario make_local_minima_2d() {
    // concave pocket between start and goal, opening toward the start. Start
    // and goal sit so the optimal detour legs run at 45 degrees, which keeps
    // the grid oracle's octile overshoot small; the tight goal ball makes
    // goal discovery itself part of the benchmark.
    std::vector<Aabb> obs = {
        Aabb({40.0, 58.0}, {58.0, 61.0}),   // pocket top
        Aabb({40.0, 39.0}, {58.0, 42.0}),   // pocket bottom
        Aabb({55.0, 39.0}, {58.0, 61.0}),   // pocket back
    };
    return make_scenario("local_minima_2d", Aabb({0.0, 0.0}, {100.0, 100.0}),
                         std::move(obs), {35.0, 56.0}, {63.0, 56.0}, 0.5);
}

Scenario make_cluttered_2d() {
    // three concave pockets in series force one long detour over their top
    // walls; chunky scatter fills the world away from the route
    std::vector<Aabb> obs = {
        Aabb({16.0, 58.0}, {36.0, 61.0}),  // pocket 1
        Aabb({16.0, 39.0}, {36.0, 42.0}),
        Aabb({33.0, 39.0}, {36.0, 61.0}),
        Aabb({42.0, 58.0}, {62.0, 61.0}),  // pocket 2
        Aabb({42.0, 39.0}, {62.0, 42.0}),
        Aabb({59.0, 39.0}, {62.0, 61.0}),
        Aabb({68.0, 58.0}, {88.0, 61.0}),  // pocket 3
        Aabb({68.0, 39.0}, {88.0, 42.0}),
        Aabb({85.0, 39.0}, {88.0, 61.0}),
    };
    const Aabb keep_out[] = {
        Aabb({6.0, 36.0}, {100.0, 70.0}),   // pockets, funnels and detour band
        Aabb({6.0, 44.0}, {16.0, 66.0}),    // start bubble
        Aabb({88.0, 44.0}, {100.0, 66.0}),  // goal bubble
    };
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 6; ++j) {
            const double cx = 9.0 + 17.0 * i + 6.0 * (jitter01(i, j + 40) - 0.5);
            const double cy = 8.0 + 16.5 * j + 6.0 * (jitter01(j, i + 91) - 0.5);
            const double wx = 4.0 + 2.5 * jitter01(i * 13 + j, 7);
            const double wy = 5.5 + 3.0 * jitter01(i, j * 17 + 3);
            const Aabb box(State{std::max(0.5, cx - wx), std::max(0.5, cy - wy)},
                           State{std::min(119.5, cx + wx), std::min(99.5, cy + wy)});
            bool blocked = false;
            for (const Aabb& ko : keep_out) {
                if (box.min_corner[0] <= ko.max_corner[0] &&
                    box.max_corner[0] >= ko.min_corner[0] &&
                    box.min_corner[1] <= ko.max_corner[1] &&
                    box.max_corner[1] >= ko.min_corner[1]) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) obs.push_back(box);
        }
    }
    return make_scenario("cluttered_2d", Aabb({0.0, 0.0}, {120.0, 100.0}), std::move(obs),
                         {10.0, 55.0}, {94.0, 55.0}, 0.35);
}

Scenario make_maze_a_2d() {
    // serpentine: vertical walls with alternating top/bottom openings
    std::vector<Aabb> obs = {
        Aabb({18.0, 0.0}, {22.0, 80.0}),
        Aabb({38.0, 20.0}, {42.0, 100.0}),
        Aabb({58.0, 0.0}, {62.0, 80.0}),
        Aabb({78.0, 20.0}, {82.0, 100.0}),
    };
    return make_scenario("maze_a_2d", Aabb({0.0, 0.0}, {100.0, 100.0}), std::move(obs),
                         {10.0, 50.0}, {90.0, 50.0}, 3.0);
}

Scenario make_maze_b_2d() {
    // tighter maze with horizontal baffles on the corridors
    std::vector<Aabb> obs = {
        Aabb({13.0, 0.0}, {17.0, 86.0}),
        Aabb({29.0, 14.0}, {33.0, 100.0}),
        Aabb({45.0, 0.0}, {49.0, 86.0}),
        Aabb({61.0, 14.0}, {65.0, 100.0}),
        Aabb({77.0, 0.0}, {81.0, 86.0}),
        Aabb({17.0, 45.0}, {25.0, 49.0}),
        Aabb({53.0, 45.0}, {61.0, 49.0}),
    };
    return make_scenario("maze_b_2d", Aabb({0.0, 0.0}, {100.0, 100.0}), std::move(obs),
                         {6.0, 50.0}, {94.0, 50.0}, 3.0);
}

// wall slab on [x0, x1] with a rectangular opening [oy0, oy1] x [oz0, oz1]
void add_wall_with_hole(std::vector<Aabb>& obs, double x0, double x1, double oy0,
                        double oy1, double oz0, double oz1) {
    obs.emplace_back(State{x0, 0.0, 0.0}, State{x1, oy0, 100.0});
    obs.emplace_back(State{x0, oy1, 0.0}, State{x1, 100.0, 100.0});
    obs.emplace_back(State{x0, oy0, 0.0}, State{x1, oy1, oz0});
    obs.emplace_back(State{x0, oy0, oz1}, State{x1, oy1, 100.0});
}

Scenario make_barriers_3d() {
    std::vector<Aabb> obs;
    add_wall_with_hole(obs, 30.0, 34.0, 10.0, 30.0, 10.0, 30.0);
    add_wall_with_hole(obs, 48.0, 52.0, 70.0, 90.0, 70.0, 90.0);
    add_wall_with_hole(obs, 66.0, 70.0, 40.0, 60.0, 40.0, 60.0);
    return make_scenario("barriers_3d", Aabb({0.0, 0.0, 0.0}, {100.0, 100.0, 100.0}),
                         std::move(obs), {10.0, 50.0, 50.0}, {90.0, 50.0, 50.0}, 5.0);
}

Scenario make_narrow_3d() {
    std::vector<Aabb> obs;
    add_wall_with_hole(obs, 24.0, 28.0, 20.0, 28.0, 20.0, 28.0);
    add_wall_with_hole(obs, 48.0, 52.0, 64.0, 72.0, 64.0, 72.0);
    add_wall_with_hole(obs, 72.0, 76.0, 36.0, 44.0, 36.0, 44.0);
    return make_scenario("narrow_3d", Aabb({0.0, 0.0, 0.0}, {100.0, 100.0, 100.0}),
                         std::move(obs), {10.0, 50.0, 50.0}, {90.0, 50.0, 50.0}, 5.0);
}

Scenario make_maze_3d() {
    std::vector<Aabb> obs;
    // horizontal decks with offset stairwells, plus one partition per level
    obs.emplace_back(State{0.0, 0.0, 30.0}, State{80.0, 100.0, 34.0});
    obs.emplace_back(State{20.0, 0.0, 62.0}, State{100.0, 100.0, 66.0});
    obs.emplace_back(State{40.0, 0.0, 0.0}, State{44.0, 70.0, 30.0});
    obs.emplace_back(State{56.0, 30.0, 34.0}, State{60.0, 100.0, 62.0});
    return make_scenario("maze_3d", Aabb({0.0, 0.0, 0.0}, {100.0, 100.0, 100.0}),
                         std::move(obs), {10.0, 10.0, 10.0}, {90.0, 90.0, 90.0}, 5.0);
}

Scenario make_diffdrive_local_minima() {
    std::vector<Aabb> obs = {
        Aabb({20.0, 29.0}, {31.0, 31.0}),
        Aabb({20.0, 19.0}, {31.0, 21.0}),
        Aabb({29.0, 19.0}, {31.0, 31.0}),
    };
    Scenario s = make_scenario("diffdrive_local_minima", Aabb({0.0, 0.0}, {50.0, 50.0}),
                               std::move(obs), {10.0, 25.0}, {40.0, 25.0}, 3.0);
    s.defaults.steering = "differential_drive";
    s.defaults.start_theta = 0.0;
    s.defaults.drive_dt = 0.05;
    s.defaults.drive_control_grid = 5;
    return s;
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
    static const std::vector<std::string> names = {
        "local_minima_2d", "cluttered_2d", "maze_a_2d",  "maze_b_2d",
        "barriers_3d",     "narrow_3d",    "maze_3d",    "diffdrive_local_minima",
    };
    return names;
}

Scenario builtin_scenario(const std::string& name) {
    if (name == "local_minima_2d") return make_local_minima_2d();
    if (name == "cluttered_2d") return make_cluttered_2d();
    if (name == "maze_a_2d") return make_maze_a_2d();
    if (name == "maze_b_2d") return make_maze_b_2d();
    if (name == "barriers_3d") return make_barriers_3d();
    if (name == "narrow_3d") return make_narrow_3d();
    if (name == "maze_3d") return make_maze_3d();
    if (name == "diffdrive_local_minima") return make_diffdrive_local_minima();
    throw ScenarioError("unknown builtin scenario: " + name);
}

}  // namespace prrtstar
