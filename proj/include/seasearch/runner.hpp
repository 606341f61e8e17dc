#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seasearch/events.hpp"
#include "seasearch/scenario.hpp"

namespace seasearch {

struct RunMetrics {
    std::optional<double> coverage_time;  ///< s until every UAV finished its pattern
    std::optional<double> time_to_detect; ///< s until a target report reached the base
    double in_range_pct = 0.0;
    double gt5_relay_pct = 0.0;
    double loc_rmse = 0.0; ///< over all 1 Hz localization records
    double loc_max = 0.0;

    bool operator==(const RunMetrics &) const = default;
};

/// Pure function of the event log.
RunMetrics metrics_from_log(const EventLog &log);

struct MissionResult {
    RunMetrics metrics;
    EventLog log;
};

MissionResult run_mission_logged(const Scenario &scenario);
RunMetrics run_mission(const Scenario &scenario);

struct ResultRow {
    int run_id = 0;
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::Parallel;
    int uav_count = 0;
    RunMetrics metrics;

    bool operator==(const ResultRow &) const = default;
};

struct AggregateRow {
    std::string stat; ///< "mean" or "median"
    Strategy strategy = Strategy::Parallel;
    int runs = 0;
    /// Mean or median per metric column over runs where the value is present;
    /// absent when no run produced it.
    std::optional<double> coverage_time, time_to_detect, in_range_pct, gt5_relay_pct, loc_rmse, loc_max;
};

double median(std::vector<double> values);

class ResultTable {
public:
    std::vector<ResultRow> rows;

    std::vector<AggregateRow> aggregates() const;

    /// Header, one line per run, then aggregate lines (run_id "mean"/"median").
    /// Missing metrics are empty cells.
    void write_csv(std::ostream &out) const;
    void write_csv(const std::filesystem::path &path) const;
    std::string to_csv() const;
    /// Reads the per-run lines back; aggregate lines are skipped.
    static ResultTable read_csv(std::istream &in);
    static ResultTable read_csv(const std::filesystem::path &path);
};

inline constexpr const char *kResultColumns =
    "run_id,seed,strategy,uav_count,coverage_time_s,time_to_detect_s,in_range_pct,gt5_relay_pct,loc_rmse_m,loc_max_m";

struct MonteCarloOptions {
    int threads = 0; ///< 0 = hardware concurrency
};

/// Runs seeds seed0 .. seed0+n_runs-1 for each strategy. Vessel layouts depend only on
/// the seed, so run k of every strategy sees the same vessels. Rows are ordered by
/// strategy then seed regardless of thread scheduling.
ResultTable monte_carlo(const Scenario &base, const std::vector<Strategy> &strategies, int n_runs,
                        std::uint64_t seed0, const MonteCarloOptions &options = {});

} // namespace seasearch
