#include "seasearch/radio.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace seasearch::radio {

double rx_power_mean(double d, const LinkParams &params)
{
    if (d > params.d_max) return kNegInf;
    const double sign = params.path_loss_sign == PathLossSign::PaperPlus ? 1.0 : -1.0;
    return params.tx_dbm - params.l0_dbm + sign * 10.0 * params.fading_exponent * std::log10(std::max(d, 1.0));
}

double rx_power(double d, const LinkParams &params, Rng &rng)
{
    const double mu = rx_power_mean(d, params);
    if (std::isinf(mu)) return mu;
    return std::normal_distribution<double>(mu, params.sigma_db)(rng);
}

double bit_error_ratio(double rx_dbm, double noise_floor_dbm)
{
    if (std::isinf(rx_dbm) && rx_dbm < 0.0) return 0.5;
    return std::erfc(std::sqrt(std::pow(10.0, (rx_dbm - noise_floor_dbm) / 10.0)));
}

double drop_probability(double ber, double n_bytes)
{
    if (ber >= 1.0) return 1.0;
    if (ber <= 0.0) return 0.0;
    return -std::expm1(n_bytes * std::log1p(-ber));
}

bool SegmentBudget::try_debit(double t, double bytes)
{
    const auto window = static_cast<std::int64_t>(std::floor(t));
    if (window != window_) {
        window_ = window;
        used_ = 0.0;
    }
    if (used_ + bytes > cap_) return false;
    used_ += bytes;
    return true;
}

double SegmentBudget::used(double t) const
{
    return static_cast<std::int64_t>(std::floor(t)) == window_ ? used_ : 0.0;
}

double expected_drop_probability(double d, double n_bytes, const LinkParams &params)
{
    if (d > params.d_max) return 1.0;
    const double mu = rx_power_mean(d, params);
    const double sigma = params.sigma_db;
    auto p_drop = [&](double rx) { return drop_probability(bit_error_ratio(rx, params.noise_floor_dbm), n_bytes); };
    if (sigma <= 0.0) return p_drop(mu);
    auto integrand = [&](double z) { return p_drop(mu + sigma * z) * std::exp(-0.5 * z * z); };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -10.0, 10.0, 15, 1e-14);
    return integral / std::sqrt(2.0 * kPi);
}

Outcome link_trial(double n_bytes, const Vec2 &from, const Vec2 &to, const LinkParams &params, Rng &rng)
{
    const double d = (to - from).norm();
    if (d > params.d_max) return Outcome::OutOfRange;
    if (params.lossless) return Outcome::Delivered;
    const double p_drop = drop_probability(bit_error_ratio(rx_power(d, params, rng), params.noise_floor_dbm), n_bytes);
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p_drop ? Outcome::Dropped : Outcome::Delivered;
}

Outcome transmit(double n_bytes, const Vec2 &from, const Vec2 &to, const LinkParams &params, Rng &rng,
                 SegmentBudget &budget, double t)
{
    if (!budget.try_debit(t, n_bytes)) return Outcome::RateLimited;
    return link_trial(n_bytes, from, to, params, rng);
}

FloodReport flood_route(const RadioMessage &msg, const std::vector<Node> &nodes, const LinkParams &params, Rng &rng,
                        SegmentBudget &budget, double t)
{
    FloodReport report;
    const int n = static_cast<int>(nodes.size());
    if (msg.src < 0 || msg.src >= n || msg.dst < 0 || msg.dst >= n)
        throw std::out_of_range("flood_route: unknown node id");

    std::vector<int> parent(static_cast<std::size_t>(n), -2); // -2 = not reached
    parent[static_cast<std::size_t>(msg.src)] = -1;
    std::vector<int> frontier{msg.src};

    for (int hop = 1; hop <= params.ttl && !frontier.empty(); ++hop) {
        std::vector<int> next;
        for (int sender : frontier) {
            if (!budget.try_debit(t, msg.size_bytes)) continue;
            ++report.transmissions;
            const Vec2 &from = nodes[static_cast<std::size_t>(sender)].position;
            for (int rx = 0; rx < n; ++rx) {
                if (parent[static_cast<std::size_t>(rx)] != -2) continue; // already holds this id
                if (link_trial(msg.size_bytes, from, nodes[static_cast<std::size_t>(rx)].position, params, rng) !=
                    Outcome::Delivered)
                    continue;
                parent[static_cast<std::size_t>(rx)] = sender;
                if (rx == msg.dst) {
                    report.delivered = true;
                    report.hops = hop;
                    report.app_deliveries = 1;
                } else if (nodes[static_cast<std::size_t>(rx)].role == NodeRole::Relay) {
                    next.push_back(rx);
                }
            }
        }
        if (report.delivered) break;
        frontier = std::move(next);
    }

    if (report.delivered) {
        for (int v = parent[static_cast<std::size_t>(msg.dst)]; v >= 0 && v != msg.src; v = parent[static_cast<std::size_t>(v)])
            report.relays_used.push_back(v);
        std::reverse(report.relays_used.begin(), report.relays_used.end());
    }
    return report;
}

std::vector<Vec2> relay_layout(const Rect &half, double spacing, const Vec2 &base)
{
    if (spacing <= 0.0) throw std::invalid_argument("relay_layout: spacing must be positive");
    auto axis = [spacing](double lo, double hi) {
        // One relay at the centre of each whole spacing-sized cell that fits in the half.
        const int count = std::max(1, static_cast<int>(std::floor((hi - lo) / spacing + 1e-9)));
        const double offset = 0.5 * ((hi - lo) - (count - 1) * spacing);
        std::vector<double> out;
        for (int i = 0; i < count; ++i) out.push_back(lo + offset + i * spacing);
        return out;
    };
    std::vector<Vec2> relays;
    for (double y : axis(half.y0, half.y1))
        for (double x : axis(half.x0, half.x1)) relays.emplace_back(x, y);

    const auto nearest = std::min_element(relays.begin(), relays.end(), [&](const Vec2 &a, const Vec2 &b) {
        return (a - base).squaredNorm() < (b - base).squaredNorm();
    });
    const Vec2 target = *nearest;
    const double gap = (target - base).norm();
    if (gap > spacing) {
        const int extra = static_cast<int>(std::ceil(gap / spacing)) - 1;
        for (int k = 1; k <= extra; ++k) relays.push_back(base + (target - base) * (static_cast<double>(k) / (extra + 1)));
    }
    return relays;
}

CommMetrics comm_metrics(const EventLog &log)
{
    struct Counts {
        int samples = 0;
        int in_range = 0;
        int gt5 = 0;
    };
    std::map<int, Counts> per_uav;
    for (const auto &e : log.events()) {
        if (e.kind != EventKind::Comm) continue;
        auto &c = per_uav[e.subject];
        ++c.samples;
        c.in_range += e.object >= 1 ? 1 : 0;
        c.gt5 += e.object > 5 ? 1 : 0;
    }
    if (per_uav.empty()) throw std::invalid_argument("comm_metrics: log has no comm records");
    CommMetrics m;
    for (const auto &[uav, c] : per_uav) {
        m.in_range_pct += 100.0 * c.in_range / c.samples;
        m.gt5_relay_pct += 100.0 * c.gt5 / c.samples;
    }
    m.in_range_pct /= static_cast<double>(per_uav.size());
    m.gt5_relay_pct /= static_cast<double>(per_uav.size());
    return m;
}

} // namespace seasearch::radio
