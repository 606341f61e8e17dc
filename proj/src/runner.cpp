#include "seasearch/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "seasearch/radio.hpp"
#include "seasearch/simulation.hpp"

namespace seasearch {

RunMetrics metrics_from_log(const EventLog &log)
{
    RunMetrics m;
    double sq = 0.0;
    int fixes = 0;
    bool any_comm = false;
    for (const auto &e : log.events()) {
        switch (e.kind) {
        case EventKind::PatternDone:
            if (!m.coverage_time) m.coverage_time = e.t;
            break;
        case EventKind::Found:
            if (!m.time_to_detect) m.time_to_detect = e.t;
            break;
        case EventKind::LocFix:
            sq += e.value * e.value;
            m.loc_max = std::max(m.loc_max, e.value);
            ++fixes;
            break;
        case EventKind::Comm:
            any_comm = true;
            break;
        default:
            break;
        }
    }
    if (fixes > 0) m.loc_rmse = std::sqrt(sq / fixes);
    if (any_comm) {
        const auto c = radio::comm_metrics(log);
        m.in_range_pct = c.in_range_pct;
        m.gt5_relay_pct = c.gt5_relay_pct;
    }
    return m;
}

MissionResult run_mission_logged(const Scenario &scenario)
{
    Simulation sim(scenario);
    sim.run();
    MissionResult r;
    r.log = sim.log();
    r.metrics = metrics_from_log(r.log);
    return r;
}

RunMetrics run_mission(const Scenario &scenario) { return run_mission_logged(scenario).metrics; }

double median(std::vector<double> values)
{
    if (values.empty()) throw std::invalid_argument("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

using Getter = std::optional<double> (*)(const RunMetrics &);

constexpr Getter kGetters[] = {
    [](const RunMetrics &m) { return m.coverage_time; },
    [](const RunMetrics &m) { return m.time_to_detect; },
    [](const RunMetrics &m) { return std::optional<double>(m.in_range_pct); },
    [](const RunMetrics &m) { return std::optional<double>(m.gt5_relay_pct); },
    [](const RunMetrics &m) { return std::optional<double>(m.loc_rmse); },
    [](const RunMetrics &m) { return std::optional<double>(m.loc_max); },
};

std::string cell(const std::optional<double> &v)
{
    if (!v) return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
}

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::optional<double> parse_cell(const std::string &s)
{
    if (s.empty()) return std::nullopt;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("result CSV: bad number '" + s + "'");
    return v;
}

} // namespace

std::vector<AggregateRow> ResultTable::aggregates() const
{
    std::vector<Strategy> order;
    for (const auto &r : rows)
        if (std::find(order.begin(), order.end(), r.strategy) == order.end()) order.push_back(r.strategy);

    std::vector<AggregateRow> out;
    for (Strategy s : order) {
        AggregateRow mean_row{"mean", s, 0, {}, {}, {}, {}, {}, {}};
        AggregateRow median_row{"median", s, 0, {}, {}, {}, {}, {}, {}};
        std::optional<double> *mean_fields[] = {&mean_row.coverage_time, &mean_row.time_to_detect, &mean_row.in_range_pct,
                                                &mean_row.gt5_relay_pct, &mean_row.loc_rmse,      &mean_row.loc_max};
        std::optional<double> *median_fields[] = {&median_row.coverage_time, &median_row.time_to_detect,
                                                  &median_row.in_range_pct,  &median_row.gt5_relay_pct,
                                                  &median_row.loc_rmse,      &median_row.loc_max};
        for (std::size_t k = 0; k < std::size(kGetters); ++k) {
            std::vector<double> vals;
            for (const auto &r : rows)
                if (r.strategy == s)
                    if (auto v = kGetters[k](r.metrics)) vals.push_back(*v);
            if (vals.empty()) continue;
            *mean_fields[k] = std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
            *median_fields[k] = median(vals);
        }
        mean_row.runs = median_row.runs =
            static_cast<int>(std::count_if(rows.begin(), rows.end(), [s](const ResultRow &r) { return r.strategy == s; }));
        out.push_back(mean_row);
        out.push_back(median_row);
    }
    return out;
}

void ResultTable::write_csv(std::ostream &out) const
{
    out << kResultColumns << '\n';
    for (const auto &r : rows) {
        out << r.run_id << ',' << r.seed << ',' << to_string(r.strategy) << ',' << r.uav_count;
        for (const auto get : kGetters) out << ',' << cell(get(r.metrics));
        out << '\n';
    }
    for (const auto &a : aggregates()) {
        out << a.stat << ",," << to_string(a.strategy) << ',';
        for (const auto *v : {&a.coverage_time, &a.time_to_detect, &a.in_range_pct, &a.gt5_relay_pct, &a.loc_rmse, &a.loc_max})
            out << ',' << cell(*v);
        out << '\n';
    }
}

void ResultTable::write_csv(const std::filesystem::path &path) const
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(f);
    if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string ResultTable::to_csv() const
{
    std::ostringstream ss;
    write_csv(ss);
    return ss.str();
}

ResultTable ResultTable::read_csv(std::istream &in)
{
    ResultTable table;
    std::string line;
    if (!std::getline(in, line) || line != kResultColumns) throw std::runtime_error("result CSV: unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 10) throw std::runtime_error("result CSV: expected 10 fields in '" + line + "'");
        if (f[0] == "mean" || f[0] == "median") continue;
        ResultRow r;
        r.run_id = std::stoi(f[0]);
        r.seed = std::stoull(f[1]);
        r.strategy = strategy_from_string(f[2]);
        r.uav_count = std::stoi(f[3]);
        r.metrics.coverage_time = parse_cell(f[4]);
        r.metrics.time_to_detect = parse_cell(f[5]);
        r.metrics.in_range_pct = parse_cell(f[6]).value_or(0.0);
        r.metrics.gt5_relay_pct = parse_cell(f[7]).value_or(0.0);
        r.metrics.loc_rmse = parse_cell(f[8]).value_or(0.0);
        r.metrics.loc_max = parse_cell(f[9]).value_or(0.0);
        table.rows.push_back(r);
    }
    return table;
}

ResultTable ResultTable::read_csv(const std::filesystem::path &path)
{
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path.string() + "'");
    try {
        return read_csv(f);
    } catch (const std::exception &e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

ResultTable monte_carlo(const Scenario &base, const std::vector<Strategy> &strategies, int n_runs, std::uint64_t seed0,
                        const MonteCarloOptions &options)
{
    if (n_runs < 1) throw std::invalid_argument("monte_carlo: n_runs must be >= 1");
    std::vector<Scenario> jobs;
    ResultTable table;
    for (Strategy s : strategies) {
        for (int k = 0; k < n_runs; ++k) {
            Scenario sc = base;
            sc.set_strategy(s);
            sc.seed = seed0 + static_cast<std::uint64_t>(k);
            jobs.push_back(sc);
            table.rows.push_back({k, sc.seed, s, sc.uav_count, {}});
        }
    }

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads =
        std::min<unsigned>(options.threads > 0 ? static_cast<unsigned>(options.threads) : hw, static_cast<unsigned>(jobs.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs.size());
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                table.rows[i].metrics = run_mission(jobs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    for (const auto &e : errors)
        if (e) std::rethrow_exception(e);
    return table;
}

} // namespace seasearch
