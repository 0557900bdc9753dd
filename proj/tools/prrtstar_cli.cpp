// Benchmark and planning CLI: plan / bench / oracle subcommands over the
// scenario files and builtin worlds. Flags mirror environment variables with
// the PRRT_ prefix.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "prrtstar/grid_oracle.hpp"
#include "prrtstar/planner.hpp"
#include "prrtstar/scenario.hpp"
#include "prrtstar/svg.hpp"
#include "prrtstar/trials.hpp"

namespace {

using namespace prrtstar;

Scenario resolve_scenario(const std::string& ref) {
    if (std::filesystem::exists(ref)) return load_scenario_file(ref);
    return builtin_scenario(ref);
}

Variant parse_variant(const std::string& name) {
    if (name == "rrtstar") return Variant::kRrtStar;
    if (name == "prrtstar") return Variant::kPRrtStar;
    if (name == "apf") return Variant::kApf;
    throw ScenarioError("unknown planner: " + name + " (expected rrtstar|prrtstar|apf)");
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_tree_csv(const std::string& path, const Tree& tree) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    const std::size_t d = tree.size() ? tree.states[0].size() : 0;
    f << "id,parent,cost,edge_cost";
    for (std::size_t a = 0; a < d; ++a) f << ",x" << a;
    if (!tree.theta.empty()) f << ",theta";
    f << "\n";
    for (VertexId v = 0; v < tree.size(); ++v) {
        f << v << "," << (tree.parent[v] == kNoVertex ? "-1" : std::to_string(tree.parent[v]))
          << "," << fmt17(tree.cost[v]) << "," << fmt17(tree.edge_cost[v]);
        for (std::size_t a = 0; a < d; ++a) f << "," << fmt17(tree.states[v][a]);
        if (!tree.theta.empty()) f << "," << fmt17(tree.theta[v]);
        f << "\n";
    }
}

void write_path_json(const std::string& path, const std::optional<PathResult>& best,
                     const RunMetrics& m, std::size_t dim) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "{\n";
    if (best) {
        f << "  \"found\": true,\n  \"cost\": " << fmt17(best->cost) << ",\n  \"states\": [";
        for (std::size_t i = 0; i < best->states.size(); ++i) {
            f << (i ? ", [" : "[");
            for (std::size_t a = 0; a < best->states[i].size(); ++a) {
                f << (a ? ", " : "") << fmt17(best->states[i][a]);
            }
            f << "]";
        }
        f << "],\n";
    } else {
        f << "  \"found\": false,\n";
    }
    f << "  \"metrics\": {\n";
    f << "    \"iterations\": " << m.iterations << ",\n";
    f << "    \"node_count\": " << m.node_count << ",\n";
    f << "    \"memory_bytes\": " << m.node_count * node_bytes(dim) << ",\n";
    if (m.iters_first) {
        f << "    \"iters_first\": " << *m.iters_first << ",\n";
        f << "    \"time_first\": " << fmt17(m.time_first) << ",\n";
    }
    if (m.iters_opt) {
        f << "    \"iters_opt\": " << *m.iters_opt << ",\n";
        f << "    \"time_opt\": " << fmt17(m.time_opt) << ",\n";
    }
    f << "    \"total_time\": " << fmt17(m.total_time) << "\n  }\n}\n";
}

struct SharedFlags {
    std::optional<double> gamma, lambda, dobs, goal_bias;
    std::optional<std::uint64_t> rgd_k;
    bool raw_force = false;
    std::optional<double> apf_ka, apf_kr, apf_dg;
    std::optional<std::uint64_t> apf_max_steps;

    void apply(PlannerConfig& cfg) const {
        if (gamma) cfg.gamma = *gamma;
        if (goal_bias) cfg.goal_bias = *goal_bias;
        if (rgd_k) cfg.rgd.k = static_cast<std::size_t>(*rgd_k);
        if (lambda) {
            cfg.rgd.lambda = *lambda;
            cfg.apf.lambda = *lambda;
        }
        if (dobs) {
            cfg.rgd.d_obs_star = *dobs;
            cfg.apf.d_obs_star = *dobs;
        }
        if (raw_force) {
            cfg.rgd.normalized = false;
            cfg.apf.normalized = false;
        }
        if (apf_ka) cfg.apf.k_a = *apf_ka;
        if (apf_kr) cfg.apf.k_r = *apf_kr;
        if (apf_dg) cfg.apf.d_g_star = *apf_dg;
        if (apf_max_steps) cfg.apf.max_steps = static_cast<std::size_t>(*apf_max_steps);
    }
};

void add_shared_flags(CLI::App* cmd, SharedFlags& fl) {
    cmd->add_option("--gamma", fl.gamma, "Near-radius constant (default 1.1 * gamma_star)")
        ->envname("PRRT_GAMMA");
    cmd->add_option("--lambda", fl.lambda, "Step size for RGD / APF descent")
        ->envname("PRRT_LAMBDA");
    cmd->add_option("--rgd-k", fl.rgd_k, "RGD loop limit")->envname("PRRT_RGD_K");
    cmd->add_option("--dobs", fl.dobs, "Obstacle clearance cutoff d*_obs")
        ->envname("PRRT_DOBS");
    cmd->add_option("--goal-bias", fl.goal_bias, "Probability of sampling the goal center")
        ->envname("PRRT_GOAL_BIAS");
    cmd->add_flag("--raw-force", fl.raw_force,
                  "Step by the raw potential force instead of unit steps")
        ->envname("PRRT_RAW_FORCE");
    cmd->add_option("--apf-ka", fl.apf_ka, "APF attractive scale K_a")->envname("PRRT_APF_KA");
    cmd->add_option("--apf-kr", fl.apf_kr, "APF repulsive scale K_r")->envname("PRRT_APF_KR");
    cmd->add_option("--apf-dg", fl.apf_dg, "APF conic/quadratic switch radius d*_g")
        ->envname("PRRT_APF_DG");
    cmd->add_option("--apf-max-steps", fl.apf_max_steps, "APF descent step cap")
        ->envname("PRRT_APF_MAX_STEPS");
}

int run_plan(const std::string& scenario_ref, const std::string& planner,
             std::uint64_t max_iters, std::uint64_t seed, const SharedFlags& fl,
             const std::string& out_path, const std::string& out_tree,
             const std::string& out_svg, std::size_t svg_axis_x, std::size_t svg_axis_y) {
    const Scenario sc = resolve_scenario(scenario_ref);
    PlannerConfig cfg;
    cfg.variant = parse_variant(planner);
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    sc.apply_defaults(cfg);
    fl.apply(cfg);

    const PlanResult result = plan(sc.env, cfg);
    const auto best = best_path(result.tree, sc.env);

    std::cout << "planner=" << planner << " scenario=" << sc.name
              << " iterations=" << result.metrics.iterations
              << " nodes=" << result.metrics.node_count;
    if (best) {
        std::cout << " cost=" << best->cost;
    } else {
        std::cout << " cost=-";
    }
    std::cout << " time=" << result.metrics.total_time << "s\n";

    if (!out_tree.empty()) write_tree_csv(out_tree, result.tree);
    if (!out_path.empty()) write_path_json(out_path, best, result.metrics, sc.env.dim());
    if (!out_svg.empty()) {
        SvgOptions opts;
        opts.axis_x = svg_axis_x;
        opts.axis_y = svg_axis_y;
        render_svg_file(out_svg, result.tree, sc.env, best, opts);
    }
    return best ? 0 : 1;
}

int run_bench(const std::string& scenario_ref, const std::string& planners,
              std::size_t repeats, std::uint64_t base_seed, std::size_t node_cap,
              double eps_conv, double oracle_resolution, std::uint64_t max_iters,
              bool serial, const SharedFlags& fl, const std::string& out_csv) {
    const Scenario sc = resolve_scenario(scenario_ref);
    const double oracle = grid_oracle_cost(sc.env, oracle_resolution);
    std::cout << "oracle cost " << oracle << " at resolution " << oracle_resolution << "\n";

    std::string csv = stat_csv_header();
    std::cout << csv;
    std::string rest = planners;
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string name = rest.substr(0, comma);
        rest = (comma == std::string::npos) ? "" : rest.substr(comma + 1);
        if (name.empty()) continue;

        PlannerConfig cfg;
        cfg.variant = parse_variant(name);
        sc.apply_defaults(cfg);
        fl.apply(cfg);

        TrialConfig tc;
        tc.repeats = repeats;
        tc.base_seed = base_seed;
        tc.node_cap = node_cap;
        tc.eps_conv = eps_conv;
        tc.oracle_cost = oracle;
        tc.serial = serial;
        tc.max_iters = max_iters;

        const TrialBatch batch = run_trials(sc.env, cfg, tc, sc.name, name);
        const std::string line = stat_csv_line(batch.row);
        std::cout << line;
        csv += line;
    }
    if (!out_csv.empty()) {
        std::ofstream f(out_csv, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + out_csv);
        f << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RRT* / P-RRT* motion planning benchmark"};
    app.require_subcommand(1);

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "Run one seeded planning query");
    std::string scenario_ref, planner = "rrtstar";
    std::uint64_t max_iters = 10000, seed = 0;
    std::string out_path, out_tree, out_svg;
    std::size_t svg_ax = 0, svg_ay = 1;
    SharedFlags plan_flags;
    plan_cmd->add_option("--scenario", scenario_ref, "Scenario file or builtin name")
        ->required()
        ->envname("PRRT_SCENARIO");
    plan_cmd->add_option("--planner", planner, "rrtstar|prrtstar|apf")->envname("PRRT_PLANNER");
    plan_cmd->add_option("--max-iters", max_iters, "Iteration budget N")
        ->envname("PRRT_MAX_ITERS");
    plan_cmd->add_option("--seed", seed, "RNG seed")->envname("PRRT_SEED");
    plan_cmd->add_option("--out-path", out_path, "Best path JSON output")
        ->envname("PRRT_OUT_PATH");
    plan_cmd->add_option("--out-tree", out_tree, "Tree CSV output")->envname("PRRT_OUT_TREE");
    plan_cmd->add_option("--out-svg", out_svg, "SVG rendering output")->envname("PRRT_OUT_SVG");
    plan_cmd->add_option("--svg-axis-x", svg_ax, "Projection axis for SVG x (3D worlds)");
    plan_cmd->add_option("--svg-axis-y", svg_ay, "Projection axis for SVG y (3D worlds)");
    add_shared_flags(plan_cmd, plan_flags);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Repeated-trial statistics table");
    std::string bench_scenario, bench_planners = "rrtstar,prrtstar", bench_out;
    std::size_t repeats = 50, node_cap = 200000;
    std::uint64_t base_seed = 0, bench_max_iters = 0;
    double eps_conv = 0.02, oracle_resolution = 1.0;
    bool serial = false;
    SharedFlags bench_flags;
    bench_cmd->add_option("--scenario", bench_scenario, "Scenario file or builtin name")
        ->required()
        ->envname("PRRT_SCENARIO");
    bench_cmd->add_option("--planners", bench_planners, "Comma-separated planner list")
        ->envname("PRRT_PLANNERS");
    bench_cmd->add_option("--repeats", repeats, "Trials per planner")->envname("PRRT_REPEATS");
    bench_cmd->add_option("--base-seed", base_seed, "First trial seed")
        ->envname("PRRT_BASE_SEED");
    bench_cmd->add_option("--node-cap", node_cap, "Tree node cap per trial")
        ->envname("PRRT_NODE_CAP");
    bench_cmd->add_option("--eps-conv", eps_conv, "Convergence threshold vs oracle cost")
        ->envname("PRRT_EPS_CONV");
    bench_cmd->add_option("--oracle-resolution", oracle_resolution, "Grid oracle cell size")
        ->envname("PRRT_ORACLE_RESOLUTION");
    bench_cmd->add_option("--max-iters", bench_max_iters,
                          "Iteration backstop (default 4 * node cap)")
        ->envname("PRRT_MAX_ITERS");
    bench_cmd->add_option("--out", bench_out, "Output CSV table")->envname("PRRT_OUT");
    bench_cmd->add_flag("--serial", serial, "Run trials on one worker for clean timing")
        ->envname("PRRT_SERIAL");
    add_shared_flags(bench_cmd, bench_flags);

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "Grid-Dijkstra optimal cost estimate");
    std::string oracle_scenario;
    double resolution = 1.0;
    oracle_cmd->add_option("--scenario", oracle_scenario, "Scenario file or builtin name")
        ->required()
        ->envname("PRRT_SCENARIO");
    oracle_cmd->add_option("--resolution", resolution, "Grid cell size in world units")
        ->envname("PRRT_RESOLUTION");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (plan_cmd->parsed()) {
            return run_plan(scenario_ref, planner, max_iters, seed, plan_flags, out_path,
                            out_tree, out_svg, svg_ax, svg_ay);
        }
        if (bench_cmd->parsed()) {
            return run_bench(bench_scenario, bench_planners, repeats, base_seed, node_cap,
                             eps_conv, oracle_resolution, bench_max_iters, serial,
                             bench_flags, bench_out);
        }
        if (oracle_cmd->parsed()) {
            const Scenario sc = resolve_scenario(oracle_scenario);
            std::printf("%.17g\n", grid_oracle_cost(sc.env, resolution));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
