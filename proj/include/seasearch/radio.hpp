#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "seasearch/events.hpp"
#include "seasearch/geometry.hpp"
#include "seasearch/random.hpp"

namespace seasearch::radio {

enum class PathLossSign { PaperPlus, PhysicalMinus };

struct LinkParams {
    double tx_dbm = 25.0;
    double l0_dbm = 40.0;
    double fading_exponent = 2.5;
    double sigma_db = 10.0;
    double noise_floor_dbm = -90.0;
    double d_max = 500.0;
    PathLossSign path_loss_sign = PathLossSign::PhysicalMinus;
    double segment_rate_cap = 1e9 / 8.0; ///< bytes per second
    int ttl = 8;
    bool lossless = false; ///< test override: in-range links never drop
};

enum class Outcome { Delivered, Dropped, OutOfRange, RateLimited };

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Mean received power; -inf beyond d_max. Distances below 1 m are clamped to 1 m.
double rx_power_mean(double d, const LinkParams &params);

/// One log-normal draw of received power.
double rx_power(double d, const LinkParams &params, Rng &rng);

/// erfc(sqrt(10^((rx - nf) / 10))); rx = -inf maps to 0.5.
double bit_error_ratio(double rx_dbm, double noise_floor_dbm);

/// 1 - (1 - BER)^N_B.
double drop_probability(double ber, double n_bytes);

/// Drop probability at distance d averaged over the log-normal shadowing of Rx;
/// the per-trial rate that link_trial realises.
double expected_drop_probability(double d, double n_bytes, const LinkParams &params);

/// Byte budget of one network segment over one-second windows.
class SegmentBudget {
public:
    explicit SegmentBudget(double cap_bytes_per_s) : cap_(cap_bytes_per_s) {}

    /// Debits `bytes` in the window containing t; false if it would exceed the cap.
    bool try_debit(double t, double bytes);
    double used(double t) const;
    double cap() const { return cap_; }

private:
    double cap_;
    std::int64_t window_ = std::numeric_limits<std::int64_t>::min();
    double used_ = 0.0;
};

/// Reception trial for one receiver of a transmission already on air.
Outcome link_trial(double n_bytes, const Vec2 &from, const Vec2 &to, const LinkParams &params, Rng &rng);

/// Single-hop transmission: budget check and debit, then the reception trial.
Outcome transmit(double n_bytes, const Vec2 &from, const Vec2 &to, const LinkParams &params, Rng &rng,
                 SegmentBudget &budget, double t);

struct RadioMessage {
    std::uint64_t id = 0;
    int src = 0;
    int dst = 0;
    double size_bytes = 1.0;
    int hop_count = 0;
};

enum class NodeRole { Base, Relay, Uav, Anchor };

struct Node {
    int id = 0;
    NodeRole role = NodeRole::Relay;
    Vec2 position{0.0, 0.0};
};

struct FloodReport {
    bool delivered = false;
    int hops = 0;
    std::vector<int> relays_used; ///< relay chain on the first-arrival path, src side first
    int transmissions = 0;
    int app_deliveries = 0; ///< copies handed to the destination application (0 or 1)
};

/// Flooding over relays with per-id duplicate suppression and a hop limit.
/// Node ids must equal their index in `nodes`.
FloodReport flood_route(const RadioMessage &msg, const std::vector<Node> &nodes, const LinkParams &params, Rng &rng,
                        SegmentBudget &budget, double t);

/// Relay grid at `spacing` covering `half`, plus a corridor toward `base` when the
/// nearest grid relay is farther than `spacing` from it.
std::vector<Vec2> relay_layout(const Rect &half, double spacing, const Vec2 &base);

/// Latched trigger for relay repositioning.
class RepositionTrigger {
public:
    explicit RepositionTrigger(double threshold = 0.9) : threshold_(threshold) {}

    bool update(double progress)
    {
        if (progress >= threshold_) latched_ = true;
        return latched_;
    }
    bool latched() const { return latched_; }
    void reset() { latched_ = false; }
    double threshold() const { return threshold_; }

private:
    double threshold_;
    bool latched_ = false;
};

struct CommMetrics {
    double in_range_pct = 0.0;
    double gt5_relay_pct = 0.0;
};

/// Percentages from the 1 Hz comm records, averaged over UAVs. Throws on an empty log.
CommMetrics comm_metrics(const EventLog &log);

} // namespace seasearch::radio
