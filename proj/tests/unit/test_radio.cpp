#include <cmath>

#include "doctest.h"
#include "seasearch/radio.hpp"
#include "seasearch/simulation.hpp"

using namespace seasearch;
using namespace seasearch::radio;

namespace {

// Shadowing average by a plain midpoint rule, independent of the library quadrature.
double drop_oracle(double d, double n_bytes, const LinkParams &p)
{
    const double mu = p.tx_dbm - p.l0_dbm - 10.0 * p.fading_exponent * std::log10(d);
    const int steps = 40000;
    const double lo = -9.0, hi = 9.0, h = (hi - lo) / steps;
    double acc = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double z = lo + (k + 0.5) * h;
        const double snr = std::pow(10.0, (mu + p.sigma_db * z - p.noise_floor_dbm) / 10.0);
        const double ber = std::erfc(std::sqrt(snr));
        acc += (1.0 - std::pow(1.0 - ber, n_bytes)) * std::exp(-0.5 * z * z);
    }
    return acc * h / std::sqrt(2.0 * M_PI);
}

bool within_3sigma(int hits, int trials, double p)
{
    const double sd = std::sqrt(p * (1.0 - p) / trials);
    return std::abs(static_cast<double>(hits) / trials - p) <= 3.0 * sd + 1e-12;
}

} // namespace

TEST_CASE("mean received power")
{
    LinkParams p;
    CHECK(std::isinf(rx_power_mean(600.0, p)));
    CHECK(rx_power_mean(600.0, p) < 0.0);
    CHECK(rx_power_mean(1.0, p) == doctest::Approx(-15.0).epsilon(1e-12));
    p.path_loss_sign = PathLossSign::PaperPlus;
    CHECK(rx_power_mean(1.0, p) == doctest::Approx(-15.0).epsilon(1e-12));
    p.path_loss_sign = PathLossSign::PhysicalMinus;
    CHECK(rx_power_mean(500.0, p) == doctest::Approx(-82.4742501).epsilon(1e-9));
}

TEST_CASE("bit error ratio spot values")
{
    CHECK(bit_error_ratio(-90.0, -90.0) == doctest::Approx(0.157299207050285).epsilon(1e-12));
    CHECK(bit_error_ratio(-80.0, -90.0) == doctest::Approx(7.74421643e-6).epsilon(1e-6));
    CHECK(bit_error_ratio(1e6, -90.0) == 0.0);
    CHECK(bit_error_ratio(kNegInf, -90.0) == 0.5);
}

TEST_CASE("drop probability")
{
    CHECK(drop_probability(0.0, 1e6) == 0.0);
    CHECK(drop_probability(1e-5, 10000) == doctest::Approx(1.0 - std::exp(10000 * std::log(1.0 - 1e-5))).epsilon(1e-12));
    CHECK(drop_probability(1e-5, 10000) == doctest::Approx(0.09517).epsilon(1e-4));
    CHECK(drop_probability(7.7e-6, 1000) == doctest::Approx(0.00767).epsilon(2e-3));
    CHECK(drop_probability(0.3, 1) == 0.3);
    double prev = 0.0;
    for (double n : {1.0, 10.0, 100.0, 1000.0}) {
        const double p = drop_probability(1e-3, n);
        CHECK(p >= prev);
        CHECK(p <= 1.0);
        prev = p;
    }
}

TEST_CASE("shadowing-averaged drop probability matches an independent integration")
{
    const LinkParams p;
    for (double d : {100.0, 300.0, 500.0})
        for (double n : {100.0, 1000.0, 10000.0})
            CHECK(expected_drop_probability(d, n, p) == doctest::Approx(drop_oracle(d, n, p)).epsilon(1e-6));
    CHECK(expected_drop_probability(501.0, 100.0, p) == 1.0);
}

TEST_CASE("link outcomes")
{
    LinkParams p;
    Rng rng(1);
    CHECK(link_trial(100, {0, 0}, {501, 0}, p, rng) == Outcome::OutOfRange);
    SegmentBudget budget(100.0);
    CHECK(budget.try_debit(0.2, 100.0));
    CHECK(transmit(10, {0, 0}, {1, 0}, p, rng, budget, 0.5) == Outcome::RateLimited);
    CHECK(transmit(10, {0, 0}, {900, 0}, p, rng, budget, 0.9) == Outcome::RateLimited);
    CHECK(budget.used(1.0) == 0.0);
    CHECK(transmit(10, {0, 0}, {900, 0}, p, rng, budget, 1.0) == Outcome::OutOfRange);
}

TEST_CASE("Monte Carlo drop rate sits in the binomial band")
{
    const LinkParams p;
    Rng rng(7);
    const int trials = 100000;
    int dropped = 0;
    for (int k = 0; k < trials; ++k) dropped += link_trial(1000, {0, 0}, {300, 0}, p, rng) == Outcome::Dropped;
    CHECK(within_3sigma(dropped, trials, expected_drop_probability(300, 1000, p)));
}

TEST_CASE("flooding")
{
    LinkParams p;
    Rng rng(3);
    SegmentBudget budget(p.segment_rate_cap);

    SUBCASE("direct link under the lossless override")
    {
        p.lossless = true;
        const std::vector<Node> nodes{{0, NodeRole::Uav, {0, 0}}, {1, NodeRole::Base, {50, 0}}};
        const auto r = flood_route({1, 0, 1, 64, 0}, nodes, p, rng, budget, 0.0);
        CHECK(r.delivered);
        CHECK(r.hops == 1);
        CHECK(r.app_deliveries == 1);
        CHECK(r.relays_used.empty());
    }
    SUBCASE("600 m chain never delivers")
    {
        const std::vector<Node> nodes{{0, NodeRole::Uav, {0, 0}}, {1, NodeRole::Relay, {600, 0}}, {2, NodeRole::Base, {1200, 0}}};
        for (int k = 0; k < 100; ++k) CHECK_FALSE(flood_route({std::uint64_t(k), 0, 2, 64, 0}, nodes, p, rng, budget, k).delivered);
    }
    SUBCASE("two-hop chain success rate")
    {
        // Range cut below the 500 m end-to-end distance so the relay hop is the only path.
        p.d_max = 400.0;
        const std::vector<Node> nodes{{0, NodeRole::Uav, {0, 0}}, {1, NodeRole::Relay, {250, 0}}, {2, NodeRole::Base, {500, 0}}};
        const double bytes = 1000.0;
        const int trials = 10000;
        int ok = 0;
        for (int k = 0; k < trials; ++k) {
            const auto r = flood_route({std::uint64_t(k), 0, 2, bytes, 0}, nodes, p, rng, budget, k);
            if (r.delivered) {
                ++ok;
                CHECK(r.hops == 2);
                CHECK(r.relays_used == std::vector<int>{1});
            }
        }
        const double q = 1.0 - expected_drop_probability(250.0, bytes, p);
        CHECK(within_3sigma(ok, trials, q * q));
    }
    SUBCASE("ttl bounds the hop count")
    {
        p.lossless = true;
        p.ttl = 2;
        std::vector<Node> nodes{{0, NodeRole::Uav, {0, 0}}};
        for (int i = 1; i <= 3; ++i) nodes.push_back({i, NodeRole::Relay, {400.0 * i, 0}});
        nodes.push_back({4, NodeRole::Base, {1600, 0}});
        CHECK_FALSE(flood_route({1, 0, 4, 64, 0}, nodes, p, rng, budget, 0.0).delivered);
        p.ttl = 4;
        const auto r = flood_route({2, 0, 4, 64, 0}, nodes, p, rng, budget, 0.0);
        CHECK(r.delivered);
        CHECK(r.hops == 4);
        CHECK(r.relays_used == std::vector<int>{1, 2, 3});
    }
}

TEST_CASE("relay grid coverage")
{
    const Rect half{0, 0, 1000, 2000};
    const auto relays = relay_layout(half, 300.0, half.center());
    REQUIRE_FALSE(relays.empty());
    for (std::size_t i = 0; i < relays.size(); ++i)
        for (std::size_t j = i + 1; j < relays.size(); ++j) CHECK((relays[i] - relays[j]).norm() >= 300.0 - 1e-9);
    double worst = 0.0;
    for (double x = 5.0; x < 1000.0; x += 10.0)
        for (double y = 5.0; y < 2000.0; y += 10.0) {
            double best = 1e18;
            for (const auto &r : relays) best = std::min(best, (r - Vec2(x, y)).norm());
            worst = std::max(worst, best);
        }
    CHECK(worst <= 500.0);
}

TEST_CASE("relay grid degenerate and mirrored")
{
    const Rect half{0, 0, 1000, 2000};
    const auto column = relay_layout(half, 1000.0, half.center());
    for (const auto &r : column) CHECK(r.x() == doctest::Approx(column.front().x()));

    const Rect zone{0, 0, 2000, 2000};
    const auto left = relay_layout(zone.half(0), 300.0, {1000, -100});
    const auto right = mirrored_relays(left, zone);
    REQUIRE(right.size() == left.size());
    // Same point set as the reflection; pairing between the two lists is by sort order.
    for (const auto &l : left) {
        const Vec2 image(2000.0 - l.x(), l.y());
        int matches = 0;
        for (const auto &r : right) matches += (r - image).norm() < 1e-9;
        CHECK(matches == 1);
    }
}

TEST_CASE("reposition trigger latches")
{
    RepositionTrigger trig(0.9);
    CHECK_FALSE(trig.update(0.5));
    CHECK(trig.update(0.95));
    CHECK(trig.update(0.0));
    trig.reset();
    CHECK_FALSE(trig.update(0.0));
}

TEST_CASE("comm metrics")
{
    EventLog saturated, isolated, mixed;
    for (int t = 0; t < 10; ++t) {
        saturated.append({double(t), EventKind::Comm, 0, 7, 0, 0, 1});
        isolated.append({double(t), EventKind::Comm, 0, 0, 0, 0, 0});
        mixed.append({double(t), EventKind::Comm, 0, t < 5 ? 6 : 2, 0, 0, 1});
        mixed.append({double(t), EventKind::Comm, 1, 0, 0, 0, 0});
    }
    auto m = comm_metrics(saturated);
    CHECK(m.in_range_pct == 100.0);
    CHECK(m.gt5_relay_pct == 100.0);
    m = comm_metrics(isolated);
    CHECK(m.in_range_pct == 0.0);
    CHECK(m.gt5_relay_pct == 0.0);
    m = comm_metrics(mixed);
    CHECK(m.in_range_pct == doctest::Approx(50.0));
    CHECK(m.gt5_relay_pct == doctest::Approx(25.0));
    CHECK_THROWS(comm_metrics(EventLog{}));
}
