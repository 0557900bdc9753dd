#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prrtstar/planner.hpp"

namespace prrtstar {

/// One benchmark table row, mirroring the usual n/t/c*/fail column set.
/// Statistics cover converged trials only; when every trial fails the
/// numeric fields stay absent and render as "-".
struct StatRow {
    std::string environment;
    std::string algorithm;
    std::optional<std::uint64_t> n_min, n_max;
    std::optional<double> n_avg;
    std::optional<double> t_min, t_max, t_avg;
    std::optional<double> c_star;  // median final cost of converged trials
    std::size_t fail_count = 0;
    std::size_t repeats = 0;
};

struct TrialConfig {
    std::size_t repeats = 1;
    std::uint64_t base_seed = 0;
    std::size_t node_cap = 200000;   // desk-scale default; configurable upward
    double eps_conv = 0.02;          // convergence threshold as a fraction of oracle cost
    double oracle_cost = 0.0;        // required: independent optimum estimate
    std::uint64_t max_iters = 0;     // 0 = 4 * node_cap backstop
    bool serial = false;             // one worker per trial unless set
};

struct TrialBatch {
    StatRow row;
    std::vector<RunMetrics> raw;  // ordered by seed
};

/// Run `repeats` seeded trials of the configured planner, one seed per trial
/// (base_seed .. base_seed + repeats - 1). A trial converges when its best
/// cost reaches (1 + eps_conv) * oracle_cost before the node cap; it fails
/// otherwise and is excluded from the n/t statistics.
TrialBatch run_trials(const Environment& env, const PlannerConfig& base,
                      const TrialConfig& tc, const std::string& env_name,
                      const std::string& alg_name);

/// Cost improvement per second after the first feasible path:
/// (c_init - c_final) / (t_opt - t_init). nullopt when either event is
/// missing or convergence was instantaneous.
std::optional<double> convergence_rate(const RunMetrics& m);

/// Fixed column set: environment,algorithm,n_min,n_max,n_avg,t_min,t_max,
/// t_avg,c_star,fail. Absent statistics print as "-".
std::string stat_csv_header();
std::string stat_csv_line(const StatRow& row);

}  // namespace prrtstar
