#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "seasearch/estimation.hpp"
#include "seasearch/events.hpp"
#include "seasearch/guidance.hpp"
#include "seasearch/radio.hpp"
#include "seasearch/rangeloc.hpp"
#include "seasearch/scenario.hpp"
#include "seasearch/search.hpp"
#include "seasearch/sensing.hpp"
#include "seasearch/vehicle.hpp"

namespace seasearch {

/// Reason codes carried by the mission_end event.
enum class EndReason { Found = 1, PatternDone = 2, TimeLimit = 3 };

struct WorldState {
    double t = 0.0;
    std::int64_t step = 0;
    std::vector<Vessel> vessels;
    std::vector<vehicle::FixedWingState> uavs;
    std::vector<Vec2> relays;
    int relay_config = 0; ///< 0 = first-half layout, 1 = switched to the second-half layout
    EventLog log;
};

/// Vessels of a scenario: the explicit list, or a seeded random spawn that depends
/// only on the scenario seed (so layouts are paired across strategies).
std::vector<Vessel> initial_vessels(const Scenario &scenario);

/// Second-half relay positions: mirror images across the dividing line, paired with
/// the first-half relays in (y, x) order so each relay travels the shortest route.
std::vector<Vec2> mirrored_relays(const std::vector<Vec2> &first, const Rect &zone);

/// Full mission loop. Each step(), in order: vessels move; every UAV runs guidance,
/// attitude control, dynamics and its filter prediction; at 1 Hz ranging,
/// localization and comm sampling; at the camera rate detection; at the radar rate
/// a scan; finally mission logic (plans, trigger, relay repositioning).
class Simulation {
public:
    explicit Simulation(const Scenario &scenario);
    Simulation(const Scenario &scenario, std::vector<Vessel> vessels);

    void step();
    /// Steps until the mission ends or `max_steps` more steps have run.
    void run(std::int64_t max_steps = -1);
    bool finished() const { return finished_; }

    const WorldState &world() const { return world_; }
    const EventLog &log() const { return world_.log; }
    const Scenario &scenario() const { return scenario_; }

    std::vector<Vec2> uav_estimates() const;
    const sensing::ProbabilityMap &radar_map() const { return radar_map_; }
    const std::optional<search::TourPlan> &informed_plan() const { return informed_plan_; }
    std::vector<Vec2> anchors() const { return anchors_; }
    bool trigger_latched() const { return trigger_.latched(); }

private:
    enum class JobKind { Follow, Inspect };
    struct Job {
        JobKind kind = JobKind::Follow;
        int half = 0;
        search::Waypoints waypoints;   ///< Follow
        search::PlannedWaypoint target; ///< Inspect
    };
    enum class Mode { Idle, Follow, Pursue };
    struct Uav {
        vehicle::ControllerState ctrl;
        estimation::PositionTracker tracker;
        estimation::BaroAltimeter baro{101325.0, 0.2};
        Vec2 acc_meas{0.0, 0.0}; ///< low-passed accelerometer, world frame
        estimation::LowPass acc_lp[2] = {estimation::LowPass(0.5), estimation::LowPass(0.5)};
        Vec2 prev_velocity{0.0, 0.0};

        std::deque<Job> jobs;
        Mode mode = Mode::Idle;
        bool job_active = false;
        Job current;
        Vec2 idle_center{0.0, 0.0};
        guidance::WaypointPath path;
        guidance::FollowerState follower;
        int credited = 0; ///< waypoints of the active Follow job already counted
        Vec2 aim{0.0, 0.0};
        bool done[2] = {false, false};
    };

    void init(std::vector<Vessel> vessels);
    Vec2 nav_position(std::size_t u) const;
    void fly(std::size_t u);
    void start_next_job(std::size_t u);
    void finish_job(std::size_t u);
    void refresh_done_flags(std::size_t u);
    void begin_follow(std::size_t u, const search::Waypoints &waypoints, int half);
    Rect active_half(int half) const { return scenario_.zone.half(half); }

    void localize_and_sample_comms();
    void camera_frame();
    void deliver_reports();
    void radar_tick();
    void mission_logic();
    void plan_patterns();
    void assign_second_half();
    void plan_informed_mission();
    void retarget_pursuits();
    void end_mission(EndReason reason);

    Scenario scenario_;
    RngStreams streams_;
    Rng rng_radio_, rng_ranging_, rng_detection_, rng_radar_, rng_imu_, rng_baro_;
    WorldState world_;
    std::vector<Uav> agents_;
    std::vector<Vec2> anchors_;
    std::vector<Vec2> relay_home_[2];
    bool relays_moving_ = false;
    radio::SegmentBudget budget_;
    radio::RepositionTrigger trigger_;
    guidance::FollowerParams follower_params_;
    sensing::ProbabilityMap radar_map_;
    std::optional<search::TourPlan> informed_plan_;
    bool planned_ = false;
    int progress_total_ = 0;
    int progress_done_ = 0;
    bool half2_assigned_ = false;
    std::uint64_t next_message_id_ = 1;

    struct PendingReport {
        int uav = 0;
        int vessel = 0;
        Vec2 observed{0.0, 0.0};
    };
    std::optional<PendingReport> pending_;
    bool found_ = false;
    bool pattern_done_ = false;
    bool finished_ = false;
    int ticks_per_second_ = 50;
    int camera_period_ = 25;
    int radar_period_ = 100;
};

} // namespace seasearch
