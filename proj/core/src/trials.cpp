#include "prrtstar/trials.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

namespace prrtstar {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

TrialBatch run_trials(const Environment& env, const PlannerConfig& base,
                      const TrialConfig& tc, const std::string& env_name,
                      const std::string& alg_name) {
    if (tc.repeats < 1) throw std::invalid_argument("run_trials: repeats must be >= 1");
    if (!(tc.oracle_cost > 0.0)) {
        throw std::invalid_argument("run_trials: oracle_cost must be positive");
    }

    TrialBatch batch;
    batch.raw.resize(tc.repeats);

    PlannerConfig cfg = base;
    cfg.node_cap = tc.node_cap;
    cfg.conv_cost_threshold = tc.oracle_cost * (1.0 + tc.eps_conv);
    cfg.stop_on_converged = true;
    cfg.max_iters = tc.max_iters > 0 ? tc.max_iters
                                     : static_cast<std::uint64_t>(4 * tc.node_cap);
    cfg.warn_small_gamma = false;

    const auto run_one = [&](std::size_t i) {
        PlannerConfig c = cfg;
        c.seed = tc.base_seed + i;
        RunMetrics m = plan(env, c).metrics;
        m.failed = !m.iters_opt.has_value();
        batch.raw[i] = std::move(m);
    };

    if (tc.serial || tc.repeats == 1) {
        for (std::size_t i = 0; i < tc.repeats; ++i) run_one(i);
    } else {
        const std::size_t workers =
            std::min<std::size_t>(tc.repeats, std::max(1u, std::thread::hardware_concurrency()));
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tc.repeats) return;
                    run_one(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    StatRow& row = batch.row;
    row.environment = env_name;
    row.algorithm = alg_name;
    row.repeats = tc.repeats;

    std::vector<double> n_vals, t_vals, c_vals;
    for (const RunMetrics& m : batch.raw) {
        if (m.failed) {
            ++row.fail_count;
            continue;
        }
        n_vals.push_back(static_cast<double>(*m.iters_opt));
        t_vals.push_back(m.time_opt);
        if (m.final_cost) c_vals.push_back(*m.final_cost);
    }
    if (!n_vals.empty()) {
        row.n_min = static_cast<std::uint64_t>(*std::min_element(n_vals.begin(), n_vals.end()));
        row.n_max = static_cast<std::uint64_t>(*std::max_element(n_vals.begin(), n_vals.end()));
        row.n_avg = std::accumulate(n_vals.begin(), n_vals.end(), 0.0) /
                    static_cast<double>(n_vals.size());
        row.t_min = *std::min_element(t_vals.begin(), t_vals.end());
        row.t_max = *std::max_element(t_vals.begin(), t_vals.end());
        row.t_avg = std::accumulate(t_vals.begin(), t_vals.end(), 0.0) /
                    static_cast<double>(t_vals.size());
        row.c_star = median(c_vals);
    }
    return batch;
}

std::optional<double> convergence_rate(const RunMetrics& m) {
    if (!m.iters_first || !m.iters_opt || !m.final_cost || m.cost_history.empty()) {
        return std::nullopt;
    }
    const double dt = m.time_opt - m.time_first;
    if (dt <= 0.0) return std::nullopt;
    const double c_init = m.cost_history.front().second;
    return (c_init - *m.final_cost) / dt;
}

std::string stat_csv_header() {
    return "environment,algorithm,n_min,n_max,n_avg,t_min,t_max,t_avg,c_star,fail\n";
}

std::string stat_csv_line(const StatRow& row) {
    std::string out = row.environment + "," + row.algorithm + ",";
    const auto put_u = [&](const std::optional<std::uint64_t>& v) {
        out += v ? std::to_string(*v) : "-";
        out += ",";
    };
    const auto put_d = [&](const std::optional<double>& v) {
        out += v ? fmt_num(*v) : "-";
        out += ",";
    };
    put_u(row.n_min);
    put_u(row.n_max);
    put_d(row.n_avg);
    put_d(row.t_min);
    put_d(row.t_max);
    put_d(row.t_avg);
    put_d(row.c_star);
    out += std::to_string(row.fail_count) + "\n";
    return out;
}

}  // namespace prrtstar
