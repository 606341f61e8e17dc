#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seasearch/geometry.hpp"
#include "seasearch/radio.hpp"
#include "seasearch/random.hpp"
#include "seasearch/sensing.hpp"
#include "seasearch/vehicle.hpp"
#include "seasearch/vessel.hpp"

namespace seasearch {

enum class Strategy { Parallel, Creeping, Spiral, Informed };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

/// Non-informed missions fly three UAVs; the radar payload of the informed method leaves room for two.
inline int default_uav_count(Strategy s) { return s == Strategy::Informed ? 2 : 3; }

struct VesselSpec {
    int vessel_class = kClassE;
    Vec2 position{0.0, 0.0};
    Vec2 velocity{0.0, 0.0};
    bool is_target = false;
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    Rect zone{0.0, 0.0, 2000.0, 2000.0};
    double mission_limit = 3600.0;
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::Parallel;
    int uav_count = 3;
    bool uav_count_auto = true; ///< follow default_uav_count(strategy)

    /// Explicit vessels; when absent, vessel_count vessels are spawned from the seed.
    bool explicit_vessels = false;
    std::vector<VesselSpec> vessels;
    int vessel_count = 10;
    int target_class = kClassE;
    double target_speed = 2.0;
    double max_vessel_speed = 2.0;

    Vec2 base{1000.0, -100.0};
    double anchor_offset = 25.0; ///< runway anchors at base +/- offset on both axes
    std::vector<Vec2> relay_layout; ///< first-half configuration; empty = automatic grid
    double relay_spacing = 300.0;
    double relay_speed = 15.0;
    double reposition_threshold = 0.9;

    double dt = 0.02;
    double uav_speed = 25.0;
    double altitude = 100.0;
    double fillet_radius = 100.0;
    double track_spacing = 100.0;
    bool stop_on_found = true;
    bool use_estimate = true; ///< guidance flies on the LKF estimate instead of truth

    double radar_warmup = 30.0; ///< informed method: scan time before planning
    double report_bytes = 200.0;

    vehicle::VehicleConfig vehicle;
    radio::LinkParams radio;
    sensing::CameraModel camera;
    sensing::ConfusionMatrix confusion = sensing::ConfusionMatrix::defaults();
    sensing::RadarModel radar;

    void validate() const;
    /// Applies strategy-dependent defaults (UAV count).
    void set_strategy(Strategy s);
};

/// Parses a scenario JSON document; absent keys keep their defaults.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path &path);

struct SpawnOptions {
    double target_speed = 2.0;
    double max_speed = 2.0;
};

/// Uniform positions; vessel 0 is the target with `target_class`, the others draw a
/// class uniformly from the remaining six. Headings are uniform, speeds are
/// target_speed for the target and uniform in [0, max_speed] otherwise.
std::vector<Vessel> spawn_random_vessels(Rng &rng, const Rect &zone, int n, int target_class,
                                         const SpawnOptions &options = {});

/// Straight-line motion with velocity reflection at the zone boundary.
void advance_vessels(std::vector<Vessel> &vessels, const Rect &zone, double dt);

} // namespace seasearch
