#include <cmath>
#include <sstream>

#include "doctest.h"
#include "seasearch/sensing.hpp"

using namespace seasearch;
using namespace seasearch::sensing;

namespace {

vehicle::FixedWingState uav_at(double x, double y, double h, double psi = 0.0)
{
    vehicle::FixedWingState s;
    s.x = x;
    s.y = y;
    s.h = h;
    s.psi = psi;
    s.v = 25.0;
    return s;
}

bool within_3sigma(int hits, int trials, double p)
{
    const double sd = std::sqrt(p * (1.0 - p) / trials);
    return std::abs(static_cast<double>(hits) / trials - p) <= 3.0 * sd + 1e-12;
}

std::pair<int, int> argmax_in(const ProbabilityMap &map, int x_lo, int x_hi)
{
    std::pair<int, int> best{x_lo, 0};
    for (int iy = 0; iy < map.ny(); ++iy)
        for (int ix = x_lo; ix < x_hi; ++ix)
            if (map.at(ix, iy) > map.at(best.first, best.second)) best = {ix, iy};
    return best;
}

} // namespace

TEST_CASE("camera footprint scales with height")
{
    const CameraModel cam;
    auto f = camera_footprint(uav_at(0, 0, 100), cam);
    CHECK(2.0 * f.half_cross == doctest::Approx(100.0));
    CHECK(2.0 * f.half_along == doctest::Approx(250.0));
    CHECK(f.area() == doctest::Approx(25000.0));

    f = camera_footprint(uav_at(0, 0, 50), cam);
    CHECK(2.0 * f.half_cross == doctest::Approx(50.0));
    CHECK(2.0 * f.half_along == doctest::Approx(125.0));

    f = camera_footprint(uav_at(0, 0, 0), cam);
    CHECK(f.empty());
    Rng rng(1);
    const std::vector<Vessel> under{{0, kClassE, {0, 0}, {0, 0}, true}};
    CHECK(detect_frame(uav_at(0, 0, 0), 0, under, cam, ConfusionMatrix::identity(), rng).empty());
}

TEST_CASE("footprint orientation follows heading")
{
    const auto f = camera_footprint(uav_at(0, 0, 100, kPi / 2), CameraModel{});
    CHECK(f.center.x() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(f.center.y() > 0.0);
    CHECK(f.contains(f.center + Vec2(0, 120)));
    CHECK_FALSE(f.contains(f.center + Vec2(60, 0)));
}

TEST_CASE("confusion matrix draws")
{
    Rng rng(3);
    const auto id = ConfusionMatrix::identity();
    for (int c = 0; c < kVesselClassCount; ++c)
        for (int k = 0; k < 100; ++k) CHECK(classify_vessel(c, id, rng) == c);

    const auto cm = ConfusionMatrix::defaults();
    CHECK_NOTHROW(cm.validate());
    CHECK(cm.probability(kClassE, kMiss) == 0.01);

    const int n = 100000;
    int misses = 0;
    for (int k = 0; k < n; ++k) misses += classify_vessel(kClassE, cm, rng) == kMiss;
    CHECK(within_3sigma(misses, n, 0.01));

    int counts[kVesselClassCount + 1] = {};
    for (int k = 0; k < n; ++k) ++counts[classify_vessel(2, cm, rng) + 1];
    for (int obs = kMiss; obs < kVesselClassCount; ++obs)
        CHECK(within_3sigma(counts[obs + 1], n, cm.probability(2, obs)));
}

TEST_CASE("confusion matrix validation")
{
    auto cm = ConfusionMatrix::identity();
    cm.rows[0][1] = 0.5;
    CHECK_THROWS(cm.validate());
}

TEST_CASE("detections")
{
    const CameraModel cam;
    const auto id = ConfusionMatrix::identity();
    Rng rng(5);
    SUBCASE("vessel abeam is not seen")
    {
        const std::vector<Vessel> v{{0, 0, {0, 1000}, {0, 0}, false}};
        CHECK(detect_frame(uav_at(0, 0, 100), 0, v, cam, id, rng).empty());
    }
    SUBCASE("target dead ahead")
    {
        const auto fp = camera_footprint(uav_at(0, 0, 100), cam);
        const std::vector<Vessel> v{{3, kClassE, fp.center, {0, 0}, true}};
        const auto ev = detect_frame(uav_at(0, 0, 100), 1, v, cam, id, rng, 4.5);
        REQUIRE(ev.size() == 1);
        CHECK(ev[0].observed_class == kClassE);
        CHECK(ev[0].vessel_id == 3);
        CHECK(ev[0].uav == 1);
        CHECK(ev[0].t == 4.5);
    }
    SUBCASE("dwell during an overflight")
    {
        const std::vector<Vessel> v{{0, 0, {1000, 0}, {0, 0}, false}};
        int run = 0, best = 0;
        for (int frame = 0; frame < 200; ++frame) {
            const double x = frame * 25.0 / cam.frame_rate;
            if (!detect_frame(uav_at(x, 0, 100), 0, v, cam, id, rng).empty()) {
                best = std::max(best, ++run);
            } else {
                run = 0;
            }
        }
        CHECK(best >= 18);
    }
}

TEST_CASE("radar map stays empty without vessels")
{
    ProbabilityMap map(Rect{0, 0, 2000, 2000}, 10.0);
    Rng rng(1);
    for (int k = 0; k < 20; ++k) radar_scan({}, RadarModel{}, map, rng);
    CHECK(map.max() == 0.0);
}

TEST_CASE("radar splat mass")
{
    ProbabilityMap map(Rect{0, 0, 2000, 2000}, 10.0);
    map.splat({1000, 1000}, 30.0);
    double sum = 0.0;
    for (double v : map.values()) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("radar map peaks at a static vessel")
{
    const RadarModel radar;
    const Vec2 truth(700, 1300);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        ProbabilityMap map(Rect{0, 0, 2000, 2000}, 10.0);
        Rng rng(seed);
        for (int k = 0; k < 15; ++k) radar_scan({{0, 0, truth, {0, 0}, false}}, radar, map, rng);
        const auto [ix, iy] = argmax_in(map, 0, map.nx());
        hits += (map.cell_center(ix, iy) - truth).norm() <= 2.0 * radar.sigma;
    }
    CHECK(hits >= 95);
}

TEST_CASE("radar map separates two vessels 2 km apart")
{
    const RadarModel radar;
    const std::vector<Vessel> vessels{{0, 0, {500, 1000}, {0, 0}, false}, {1, 0, {2500, 1000}, {0, 0}, false}};
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        ProbabilityMap map(Rect{0, 0, 3000, 2000}, 10.0);
        Rng rng(seed);
        for (int k = 0; k < 15; ++k) radar_scan(vessels, radar, map, rng);
        const auto a = argmax_in(map, 0, map.nx() / 2);
        const auto b = argmax_in(map, map.nx() / 2, map.nx());
        const double sep = (map.cell_center(a.first, a.second) - map.cell_center(b.first, b.second)).norm();
        hits += std::abs(sep - 2000.0) <= 2.0 * map.cell();
    }
    CHECK(hits >= 95);
}

TEST_CASE("target extraction")
{
    ProbabilityMap map(Rect{0, 0, 2000, 2000}, 10.0);
    CHECK(extract_targets(map).empty());

    SUBCASE("single blob")
    {
        map.splat({1003, 997}, 30.0);
        const auto c = extract_targets(map);
        REQUIRE(c.size() == 1);
        CHECK((c[0].point - Vec2(1003, 997)).norm() <= map.cell());
    }
    SUBCASE("two close blobs merge")
    {
        map.splat({925, 1000}, 60.0);
        map.splat({1075, 1000}, 60.0);
        const auto c = extract_targets(map);
        REQUIRE(c.size() == 1);
        CHECK(c[0].radius >= 75.0);
    }
    SUBCASE("two distant blobs stay apart")
    {
        map.splat({500, 500}, 30.0);
        map.splat({1500, 1500}, 30.0);
        CHECK(extract_targets(map).size() == 2);
    }
}

TEST_CASE("map file round trip")
{
    ProbabilityMap map(Rect{-100, 50, 200, 250}, 10.0);
    map.splat({0, 100}, 20.0);
    std::stringstream ss;
    map.write(ss);
    const auto back = ProbabilityMap::read(ss);
    CHECK(back.nx() == map.nx());
    CHECK(back.ny() == map.ny());
    CHECK(back.cell() == map.cell());
    for (std::size_t k = 0; k < map.values().size(); ++k) CHECK(back.values()[k] == doctest::Approx(map.values()[k]).epsilon(1e-12));
}
