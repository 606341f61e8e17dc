#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seasearch/radio.hpp"
#include "seasearch/rangeloc.hpp"
#include "seasearch/runner.hpp"
#include "seasearch/scenario.hpp"
#include "seasearch/search.hpp"
#include "seasearch/simulation.hpp"

using namespace seasearch;

namespace {

struct Common {
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> strategies;
    std::string out;
};

void add_common(CLI::App *cmd, Common &c, bool with_strategy = true)
{
    cmd->add_option("--scenario", c.scenario_path, "Scenario JSON file (defaults apply when omitted)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "Root seed");
    if (with_strategy)
        cmd->add_option("--strategy", c.strategies, "parallel, creeping, spiral, informed or all (repeatable)");
    cmd->add_option("--out", c.out, "Output file (stdout when omitted)");
}

Scenario base_scenario(const Common &c)
{
    Scenario sc = c.scenario_path.empty() ? Scenario{} : load_scenario(c.scenario_path);
    if (c.seed) sc.seed = *c.seed;
    return sc;
}

std::vector<Strategy> parse_strategies(const std::vector<std::string> &names, Strategy fallback)
{
    std::vector<Strategy> out;
    for (const auto &n : names) {
        if (n == "all") {
            for (Strategy s : {Strategy::Parallel, Strategy::Creeping, Strategy::Spiral, Strategy::Informed}) out.push_back(s);
        } else {
            out.push_back(strategy_from_string(n));
        }
    }
    if (out.empty()) out.push_back(fallback);
    return out;
}

void emit(const std::string &path, const std::string &text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multi-UAV maritime search simulator"};
    app.require_subcommand(1);

    Common run_opts;
    std::string log_path;
    auto *run = app.add_subcommand("run", "Run one mission and print its metrics row");
    add_common(run, run_opts);
    run->add_option("--log", log_path, "Also write the event log as NDJSON");

    Common sweep_opts;
    int runs = 10;
    int threads = 0;
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo over seeds with paired vessel layouts");
    add_common(sweep, sweep_opts);
    sweep->add_option("--runs", runs, "Runs per strategy")->check(CLI::PositiveNumber);
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

    Common pat_opts;
    auto *patterns = app.add_subcommand("patterns", "Emit waypoint plans as CSV");
    add_common(patterns, pat_opts);

    Common loc_opts;
    int agents = 6;
    int trials = 200;
    double region = 1000.0;
    double noise = 0.01;
    auto *loc = app.add_subcommand("localize-bench", "SMACOF localization Monte Carlo");
    add_common(loc, loc_opts, false);
    loc->add_option("--agents", agents, "Agents per trial")->check(CLI::Range(3, 1000));
    loc->add_option("--trials", trials, "Trials")->check(CLI::PositiveNumber);
    loc->add_option("--region", region, "Square region side, m");
    loc->add_option("--noise", noise, "Relative range noise");

    Common comm_opts;
    int comm_trials = 100000;
    auto *comms = app.add_subcommand("comms-bench", "Link-model curves: analytic and Monte Carlo drop rates");
    add_common(comms, comm_opts, false);
    comms->add_option("--trials", comm_trials, "Trials per (distance, size) point")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            Scenario sc = base_scenario(run_opts);
            sc.set_strategy(parse_strategies(run_opts.strategies, sc.strategy).front());
            const auto result = run_mission_logged(sc);
            ResultTable table;
            table.rows.push_back({0, sc.seed, sc.strategy, sc.uav_count, result.metrics});
            emit(run_opts.out, table.to_csv());
            if (!log_path.empty()) emit(log_path, result.log.to_ndjson());
        } else if (*sweep) {
            const Scenario sc = base_scenario(sweep_opts);
            const auto strategies = parse_strategies(sweep_opts.strategies, sc.strategy);
            const auto table = monte_carlo(sc, strategies, runs, sc.seed, {threads});
            emit(sweep_opts.out, table.to_csv());
        } else if (*patterns) {
            Scenario sc = base_scenario(pat_opts);
            std::ostringstream out;
            for (Strategy s : parse_strategies(pat_opts.strategies, sc.strategy)) {
                sc.set_strategy(s);
                out << "# strategy " << to_string(s) << '\n';
                if (s == Strategy::Informed) {
                    Simulation sim(sc);
                    while (!sim.informed_plan() && !sim.finished()) sim.step();
                    if (sim.informed_plan()) search::write_plan_csv(out, *sim.informed_plan());
                    continue;
                }
                const auto pattern = s == Strategy::Creeping ? search::Pattern::CreepingLines
                                     : s == Strategy::Spiral ? search::Pattern::SquareSpiral
                                                             : search::Pattern::ParallelLines;
                const auto h0 = search::generate_pattern(pattern, sc.zone.half(0), sc.uav_count, sc.track_spacing);
                const auto h1 = search::generate_pattern(pattern, sc.zone.half(1), sc.uav_count, sc.track_spacing);
                search::write_plan_csv(out, h0, h1);
            }
            emit(pat_opts.out, out.str());
        } else if (*loc) {
            const std::uint64_t seed = loc_opts.seed.value_or(0);
            const auto bench = rangeloc::localization_bench(agents, region, trials, seed, noise);
            std::ostringstream out;
            out << "trial,rmse_m\n";
            for (std::size_t i = 0; i < bench.rmse.size(); ++i) out << i << ',' << fmt(bench.rmse[i]) << '\n';
            out << "median,," << fmt(bench.median_rmse) << '\n';
            emit(loc_opts.out, out.str());
            std::cerr << "median RMSE " << bench.median_rmse << " m, non-monotone iterations "
                      << bench.non_monotone_iterations << '\n';
        } else if (*comms) {
            const Scenario sc = base_scenario(comm_opts);
            Rng rng = RngStreams(sc.seed).stream("radio");
            std::ostringstream out;
            out << "distance_m,bytes,rx_mean_dbm,ber_at_mean,p_drop_expected,p_drop_mc\n";
            for (double d = 50.0; d <= sc.radio.d_max + 1e-9; d += 50.0) {
                for (double bytes : {100.0, 1000.0, 10000.0}) {
                    int dropped = 0;
                    for (int k = 0; k < comm_trials; ++k)
                        dropped += radio::link_trial(bytes, {0.0, 0.0}, {d, 0.0}, sc.radio, rng) == radio::Outcome::Dropped;
                    const double mean = radio::rx_power_mean(d, sc.radio);
                    out << fmt(d) << ',' << fmt(bytes) << ',' << fmt(mean) << ','
                        << fmt(radio::bit_error_ratio(mean, sc.radio.noise_floor_dbm)) << ','
                        << fmt(radio::expected_drop_probability(d, bytes, sc.radio)) << ','
                        << fmt(static_cast<double>(dropped) / comm_trials) << '\n';
                }
            }
            emit(comm_opts.out, out.str());
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
