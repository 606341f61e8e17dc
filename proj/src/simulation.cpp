#include "seasearch/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace seasearch {

namespace {

constexpr double kReferencePressure = 101325.0;
constexpr double kBaroNoisePa = 1.0;
constexpr double kRangeReportBytes = 64.0;
constexpr double kRetargetGate = 200.0;
constexpr double kImuNoise = 0.02; // accelerometer white noise per axis, m/s^2

int ticks_for(double period, double dt) { return std::max(1, static_cast<int>(std::lround(period / dt))); }

search::Waypoints dedupe(const search::Waypoints &in)
{
    search::Waypoints out;
    for (const auto &p : in)
        if (out.empty() || (p - out.back()).norm() > 1e-6) out.push_back(p);
    return out;
}

/// Pulls the along-track ends of lawnmower tracks in by `margin` so turns stay inside the half.
void inset_track_ends(std::vector<search::Waypoints> &paths, search::Pattern pattern, const Rect &half, double margin)
{
    if (pattern == search::Pattern::SquareSpiral) return;
    const bool along_y = pattern == search::Pattern::ParallelLines;
    const double lo = along_y ? half.y0 : half.x0;
    const double hi = along_y ? half.y1 : half.x1;
    if (hi - lo <= 2.0 * margin) return;
    for (auto &path : paths)
        for (auto &p : path) {
            double &c = along_y ? p.y() : p.x();
            c = std::clamp(c, lo + margin, hi - margin);
        }
}

search::Pattern pattern_for(Strategy s)
{
    switch (s) {
    case Strategy::Creeping: return search::Pattern::CreepingLines;
    case Strategy::Spiral: return search::Pattern::SquareSpiral;
    default: return search::Pattern::ParallelLines;
    }
}

} // namespace

std::vector<Vessel> initial_vessels(const Scenario &scenario)
{
    if (scenario.explicit_vessels) {
        std::vector<Vessel> out;
        for (std::size_t i = 0; i < scenario.vessels.size(); ++i) {
            const auto &spec = scenario.vessels[i];
            out.push_back({static_cast<int>(i), spec.vessel_class, spec.position, spec.velocity, spec.is_target});
        }
        return out;
    }
    if (scenario.vessel_count == 0) return {};
    Rng rng = RngStreams(scenario.seed).stream("spawning");
    return spawn_random_vessels(rng, scenario.zone, scenario.vessel_count, scenario.target_class,
                                {scenario.target_speed, scenario.max_vessel_speed});
}

std::vector<Vec2> mirrored_relays(const std::vector<Vec2> &first, const Rect &zone)
{
    const double mid = zone.center().x();
    std::vector<Vec2> mirror;
    for (const auto &p : first) mirror.emplace_back(2.0 * mid - p.x(), p.y());
    auto by_yx = [](const Vec2 &a, const Vec2 &b) { return a.y() != b.y() ? a.y() < b.y() : a.x() < b.x(); };
    std::vector<std::size_t> order(first.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return by_yx(first[a], first[b]); });
    std::sort(mirror.begin(), mirror.end(), by_yx);
    std::vector<Vec2> out(first.size());
    for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = mirror[k];
    return out;
}

Simulation::Simulation(const Scenario &scenario) : Simulation(scenario, initial_vessels(scenario)) {}

Simulation::Simulation(const Scenario &scenario, std::vector<Vessel> vessels)
    : scenario_(scenario), streams_(scenario.seed), rng_radio_(streams_.stream("radio")),
      rng_ranging_(streams_.stream("ranging")), rng_detection_(streams_.stream("detection")),
      rng_radar_(streams_.stream("radar")), rng_imu_(streams_.stream("imu")), rng_baro_(streams_.stream("baro")),
      budget_(scenario.radio.segment_rate_cap), trigger_(scenario.reposition_threshold)
{
    scenario_.validate();
    ticks_per_second_ = ticks_for(1.0, scenario_.dt);
    camera_period_ = ticks_for(1.0 / scenario_.camera.frame_rate, scenario_.dt);
    radar_period_ = ticks_for(scenario_.radar.scan_period, scenario_.dt);
    init(std::move(vessels));
}

void Simulation::init(std::vector<Vessel> vessels)
{
    const auto &sc = scenario_;
    world_.vessels = std::move(vessels);
    const double o = sc.anchor_offset;
    anchors_ = {sc.base + Vec2(-o, -o), sc.base + Vec2(o, -o), sc.base + Vec2(-o, o), sc.base + Vec2(o, o)};
    relay_home_[0] = sc.relay_layout.empty() ? radio::relay_layout(sc.zone.half(0), sc.relay_spacing, sc.base)
                                             : sc.relay_layout;
    relay_home_[1] = mirrored_relays(relay_home_[0], sc.zone);
    world_.relays = relay_home_[0];

    follower_params_.speed = sc.uav_speed;
    const int n = sc.uav_count;
    agents_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        vehicle::FixedWingState s;
        s.x = sc.base.x() + (i - 0.5 * (n - 1)) * 30.0;
        s.y = sc.base.y();
        s.h = sc.altitude;
        s.psi = kPi / 2.0;
        s.v = sc.uav_speed;
        world_.uavs.push_back(s);
        auto &a = agents_[static_cast<std::size_t>(i)];
        const Vec2 vel(0.0, sc.uav_speed);
        a.tracker.reset(s.position(), vel, 1.0);
        a.prev_velocity = vel;
        a.idle_center = s.position();
        a.baro.update(estimation::pressure_at_altitude(s.h, kReferencePressure));
    }

    if (sc.strategy == Strategy::Informed) {
        radar_map_ = sensing::ProbabilityMap(sc.zone, 10.0);
        sc.radar_warmup <= 0.0 ? plan_informed_mission() : void();
    } else {
        plan_patterns();
    }
}

Vec2 Simulation::nav_position(std::size_t u) const
{
    return scenario_.use_estimate ? agents_[u].tracker.position() : world_.uavs[u].position();
}

std::vector<Vec2> Simulation::uav_estimates() const
{
    std::vector<Vec2> out;
    for (const auto &a : agents_) out.push_back(a.tracker.position());
    return out;
}

// ---------------------------------------------------------------------------
// Planning

void Simulation::plan_patterns()
{
    const auto pattern = pattern_for(scenario_.strategy);
    const Rect half = active_half(0);
    auto paths = search::generate_pattern(pattern, half, scenario_.uav_count, scenario_.track_spacing);
    inset_track_ends(paths, pattern, half, scenario_.fillet_radius);
    progress_total_ = 0;
    for (std::size_t u = 0; u < agents_.size(); ++u) {
        Job job;
        job.kind = JobKind::Follow;
        job.half = 0;
        job.waypoints = dedupe(paths[u]);
        progress_total_ += static_cast<int>(job.waypoints.size());
        agents_[u].jobs.push_back(std::move(job));
    }
    planned_ = true;
}

void Simulation::assign_second_half()
{
    const auto pattern = pattern_for(scenario_.strategy);
    const Rect half = active_half(1);
    auto base = search::generate_pattern(pattern, half, scenario_.uav_count, scenario_.track_spacing);
    inset_track_ends(base, pattern, half, scenario_.fillet_radius);

    const std::size_t n = agents_.size();
    std::vector<double> remaining(n, 0.0);
    std::vector<Vec2> end(n);
    for (std::size_t u = 0; u < n; ++u) {
        const auto &a = agents_[u];
        end[u] = nav_position(u);
        if (a.job_active && a.current.half == 0 && a.mode == Mode::Follow && a.follower.phase != guidance::Phase::Loiter) {
            const auto &w = a.path.waypoints();
            Vec2 prev = nav_position(u);
            for (std::size_t i = a.follower.target; i < w.size(); ++i) {
                remaining[u] += (w[i] - prev).norm();
                prev = w[i];
            }
            end[u] = w.back();
        }
    }

    const Vec2 c = half.center();
    double best_max = std::numeric_limits<double>::infinity();
    double best_sum = best_max;
    std::vector<search::Waypoints> best;
    for (int g = 0; g < 4; ++g) {
        std::vector<search::Waypoints> variant = base;
        for (auto &path : variant)
            for (auto &p : path) {
                if (g & 1) p.x() = 2.0 * c.x() - p.x();
                if (g & 2) p.y() = 2.0 * c.y() - p.y();
            }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        do {
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                double worst = 0.0;
                double sum = 0.0;
                for (std::size_t u = 0; u < n; ++u) {
                    const auto &path = variant[perm[u]];
                    const Vec2 &start = (mask >> u) & 1u ? path.back() : path.front();
                    const double cost = remaining[u] + (start - end[u]).norm() + search::path_length(path);
                    worst = std::max(worst, cost);
                    sum += cost;
                }
                if (worst < best_max - 1e-9 || (std::abs(worst - best_max) <= 1e-9 && sum < best_sum - 1e-9)) {
                    best_max = worst;
                    best_sum = sum;
                    best.assign(n, {});
                    for (std::size_t u = 0; u < n; ++u) {
                        best[u] = variant[perm[u]];
                        if ((mask >> u) & 1u) std::reverse(best[u].begin(), best[u].end());
                    }
                }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    for (std::size_t u = 0; u < n; ++u) {
        Job job;
        job.kind = JobKind::Follow;
        job.half = 1;
        job.waypoints = dedupe(best[u]);
        agents_[u].jobs.push_back(std::move(job));
    }
    half2_assigned_ = true;
}

void Simulation::plan_informed_mission()
{
    std::vector<Vec2> entry;
    for (std::size_t u = 0; u < agents_.size(); ++u) entry.push_back(nav_position(u));
    search::InformedOptions opts;
    opts.spacing = scenario_.track_spacing;
    opts.mtsp.seed = RngStreams::derive_seed(scenario_.seed, "mtsp");
    informed_plan_ = search::plan_informed(radar_map_, scenario_.uav_count, scenario_.zone, entry, opts);

    progress_total_ = 0;
    for (std::size_t u = 0; u < agents_.size(); ++u) {
        const auto &up = informed_plan_->uavs[u];
        if (informed_plan_->fallback) {
            search::Waypoints w0;
            search::Waypoints w1;
            for (const auto &w : up.first_half) w0.push_back(w.position);
            for (const auto &w : up.second_half) w1.push_back(w.position);
            Job j0{JobKind::Follow, 0, dedupe(w0), {}};
            Job j1{JobKind::Follow, 1, dedupe(w1), {}};
            progress_total_ += static_cast<int>(j0.waypoints.size());
            agents_[u].jobs.push_back(std::move(j0));
            agents_[u].jobs.push_back(std::move(j1));
        } else {
            for (const auto &w : up.first_half) {
                agents_[u].jobs.push_back({JobKind::Inspect, 0, {}, w});
                ++progress_total_;
            }
            for (const auto &w : up.second_half) agents_[u].jobs.push_back({JobKind::Inspect, 1, {}, w});
        }
    }
    planned_ = true;
    half2_assigned_ = true;
}

// ---------------------------------------------------------------------------
// Per-UAV task execution

void Simulation::start_next_job(std::size_t u)
{
    auto &a = agents_[u];
    auto go_idle = [&] {
        if (a.mode != Mode::Idle) {
            a.mode = Mode::Idle;
            a.idle_center = nav_position(u);
        }
    };
    if (a.jobs.empty() || (a.jobs.front().half == 1 && !trigger_.latched())) {
        go_idle();
        return;
    }
    a.current = std::move(a.jobs.front());
    a.jobs.pop_front();
    a.job_active = true;
    if (a.current.kind == JobKind::Follow) {
        begin_follow(u, a.current.waypoints, a.current.half);
    } else {
        a.mode = Mode::Pursue;
        a.aim = active_half(a.current.half).clamp(a.current.target.position);
    }
}

void Simulation::begin_follow(std::size_t u, const search::Waypoints &waypoints, int /*half*/)
{
    auto &a = agents_[u];
    search::Waypoints w{nav_position(u)};
    w.insert(w.end(), waypoints.begin(), waypoints.end());
    w = dedupe(w);
    a.credited = 0;
    if (w.size() < 2) {
        finish_job(u);
        return;
    }
    a.path = guidance::WaypointPath(std::move(w), scenario_.fillet_radius);
    a.follower = guidance::FollowerState{};
    a.mode = Mode::Follow;
}

void Simulation::finish_job(std::size_t u)
{
    auto &a = agents_[u];
    if (a.current.half == 0) {
        if (a.current.kind == JobKind::Inspect) {
            ++progress_done_;
        } else {
            progress_done_ += static_cast<int>(a.current.waypoints.size()) - a.credited;
            a.credited = static_cast<int>(a.current.waypoints.size());
        }
    }
    a.job_active = false;
    a.mode = Mode::Follow; // forces go_idle to re-centre the loiter
    start_next_job(u);
}

void Simulation::refresh_done_flags(std::size_t u)
{
    auto &a = agents_[u];
    if (!planned_) return;
    auto pending_in = [&](int h) {
        if (a.job_active && a.current.half == h) return true;
        return std::any_of(a.jobs.begin(), a.jobs.end(), [h](const Job &j) { return j.half == h; });
    };
    for (int h = 0; h < 2; ++h) {
        if (a.done[h]) continue;
        if (h == 1 && (!a.done[0] || !half2_assigned_)) break;
        if (pending_in(h)) break;
        a.done[h] = true;
        const Vec2 p = world_.uavs[u].position();
        world_.log.append({world_.t, EventKind::UavDone, static_cast<int>(u), h, p.x(), p.y(), 0.0});
    }
}

void Simulation::fly(std::size_t u)
{
    auto &a = agents_[u];
    auto &truth = world_.uavs[u];
    const auto &sc = scenario_;

    if (!a.job_active && planned_) start_next_job(u);

    Vec2 pos = nav_position(u);
    if (a.mode == Mode::Pursue) {
        if ((a.aim - pos).norm() < sc.fillet_radius) {
            // Arrived: inspect with an inside-out spiral around the aim point.
            auto spiral = search::square_spiral_around(a.aim, a.current.target.radius, sc.track_spacing, 1);
            const Rect half = active_half(a.current.half);
            search::Waypoints w;
            for (std::size_t i = 1; i < spiral.size(); ++i) w.push_back(half.clamp(spiral[i]));
            begin_follow(u, w, a.current.half);
        }
    }

    double heading = truth.psi;
    double roll_ff = 0.0;
    const double orbit_ff = std::atan(sc.uav_speed * sc.uav_speed / (kGravity * sc.fillet_radius));
    switch (a.mode) {
    case Mode::Idle:
        heading = guidance::orbit_heading(a.idle_center, sc.fillet_radius, 1, pos, follower_params_.orbit);
        roll_ff = orbit_ff;
        break;
    case Mode::Pursue: {
        const Vec2 d = a.aim - pos;
        heading = std::atan2(d.y(), d.x());
        break;
    }
    case Mode::Follow: {
        const auto out = guidance::follower_step(a.follower, a.path, pos, follower_params_);
        heading = out.heading;
        roll_ff = out.roll_ff;
        if (a.current.kind == JobKind::Follow && a.current.half == 0) {
            const int n = static_cast<int>(a.path.size()) - 1;
            const int reached = out.finished ? n : static_cast<int>(a.follower.target) - 1;
            const int credit = std::min(reached, static_cast<int>(a.current.waypoints.size()));
            if (credit > a.credited) {
                progress_done_ += credit - a.credited;
                a.credited = credit;
            }
        }
        if (out.finished) finish_job(u);
        break;
    }
    }

    // Attitude loop on barometric altitude.
    const double pressure = estimation::pressure_at_altitude(truth.h, kReferencePressure) +
                            std::normal_distribution<double>(0.0, kBaroNoisePa)(rng_baro_);
    vehicle::FixedWingState sensed = truth;
    sensed.h = a.baro.update(pressure);
    vehicle::References refs;
    refs.h_ref = sc.altitude;
    refs.psi_ref = heading;
    refs.v_ref = sc.uav_speed;
    refs.roll_ff = roll_ff;
    const auto inputs = vehicle::attitude_controller(sensed, refs, sc.vehicle, sc.dt, a.ctrl);
    truth = vehicle::fixed_wing_step(truth, inputs, sc.dt, sc.vehicle);

    const Vec2 vel = truth.v * Vec2(std::cos(truth.psi), std::sin(truth.psi));
    const Vec2 acc = (vel - a.prev_velocity) / sc.dt;
    a.prev_velocity = vel;
    std::normal_distribution<double> imu(0.0, kImuNoise);
    a.acc_meas = Vec2(a.acc_lp[0].update(acc.x() + imu(rng_imu_)), a.acc_lp[1].update(acc.y() + imu(rng_imu_)));
    a.tracker.predict(sc.dt);
    a.tracker.correct_acceleration(a.acc_meas);
}

// ---------------------------------------------------------------------------
// Sensors, radio, localization

void Simulation::localize_and_sample_comms()
{
    const auto &sc = scenario_;
    const std::size_t n_anchor = anchors_.size();
    const std::size_t n_relay = world_.relays.size();
    const std::size_t n_uav = agents_.size();
    const double t = world_.t;

    // Comm sample and range report per UAV.
    std::vector<radio::Node> nodes;
    nodes.push_back({0, radio::NodeRole::Base, sc.base});
    for (std::size_t r = 0; r < n_relay; ++r) nodes.push_back({static_cast<int>(r + 1), radio::NodeRole::Relay, world_.relays[r]});
    const int uav_node = static_cast<int>(nodes.size());
    nodes.push_back({uav_node, radio::NodeRole::Uav, {0.0, 0.0}});

    std::vector<bool> reported(n_uav, false);
    for (std::size_t u = 0; u < n_uav; ++u) {
        const Vec2 p = world_.uavs[u].position();
        int in_range = 0;
        for (const auto &r : world_.relays) in_range += (r - p).norm() <= sc.radio.d_max ? 1 : 0;
        nodes.back().position = p;
        radio::RadioMessage msg{next_message_id_++, uav_node, 0, kRangeReportBytes, 0};
        reported[u] = radio::flood_route(msg, nodes, sc.radio, rng_radio_, budget_, t).delivered;
        world_.log.append({t, EventKind::Comm, static_cast<int>(u), in_range, p.x(), p.y(), reported[u] ? 1.0 : 0.0});
    }

    // Ranging epoch over anchors, relays and UAVs.
    std::vector<Vec2> truth = anchors_;
    truth.insert(truth.end(), world_.relays.begin(), world_.relays.end());
    for (const auto &s : world_.uavs) truth.push_back(s.position());
    const int n = static_cast<int>(truth.size());
    const int uav0 = static_cast<int>(n_anchor + n_relay);

    auto meas = rangeloc::measure_ranges(truth, rng_ranging_, {}, t);
    std::erase_if(meas, [&](const rangeloc::RangeMeasurement &m) {
        const bool drop_i = m.i >= uav0 && !reported[static_cast<std::size_t>(m.i - uav0)];
        const bool drop_j = m.j >= uav0 && !reported[static_cast<std::size_t>(m.j - uav0)];
        return drop_i || drop_j;
    });
    const auto d = rangeloc::DistanceMatrix::from_measurements(n, meas);

    std::vector<Vec2> init = anchors_;
    init.insert(init.end(), world_.relays.begin(), world_.relays.end());
    for (std::size_t u = 0; u < n_uav; ++u) init.push_back(agents_[u].tracker.position());
    const auto placement = rangeloc::smacof_solve(d, rangeloc::to_coordinates(init), {1e-9, 200, false});

    std::vector<int> tier1(n_anchor);
    std::iota(tier1.begin(), tier1.end(), 0);
    const rangeloc::TierParams tier_params;
    const auto tiers = rangeloc::tier_assign(d, tier1, tier_params);

    std::vector<int> component(static_cast<std::size_t>(n), -1);
    const auto comps = d.components();
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int i : comps[c]) component[static_cast<std::size_t>(i)] = static_cast<int>(c);
    const int anchor_comp = component[0];

    std::vector<rangeloc::Reference> refs;
    for (int i = 0; i < uav0; ++i) {
        if (component[static_cast<std::size_t>(i)] != anchor_comp || tiers[static_cast<std::size_t>(i)].tier == 0) continue;
        const double s = tiers[static_cast<std::size_t>(i)].sigma;
        refs.push_back({i, truth[static_cast<std::size_t>(i)], 1.0 / (s * s + 1.0)});
    }
    std::optional<rangeloc::Alignment> aligned;
    try {
        aligned = rangeloc::align_global(placement.positions, refs, &init);
    } catch (const rangeloc::InsufficientReferences &) {
        aligned.reset();
    }

    for (std::size_t u = 0; u < n_uav; ++u) {
        const int agent = uav0 + static_cast<int>(u);
        const auto &tier = tiers[static_cast<std::size_t>(agent)];
        int fix_tier = 0;
        if (aligned && reported[u] && tier.tier > 0 && component[static_cast<std::size_t>(agent)] == anchor_comp) {
            double sum = 0.0;
            int count = 0;
            for (int j = 0; j < n; ++j)
                if (d.measured(agent, j)) {
                    sum += d.distance(agent, j);
                    ++count;
                }
            const double floor = count > 0 ? 0.01 * sum / count : 0.0;
            const double sigma = std::max(tier.sigma + aligned->residual_rms, floor);
            agents_[u].tracker.correct_fix(aligned->positions[static_cast<std::size_t>(agent)], std::max(sigma, 1e-3),
                                           agents_[u].acc_meas, t);
            fix_tier = tier.tier;
        }
        const Vec2 est = agents_[u].tracker.position();
        const double err = (est - world_.uavs[u].position()).norm();
        world_.log.append({t, EventKind::LocFix, static_cast<int>(u), fix_tier, est.x(), est.y(), err});
    }
}

void Simulation::deliver_reports()
{
    if (!pending_ || found_) return;
    const auto &sc = scenario_;
    std::vector<radio::Node> nodes;
    nodes.push_back({0, radio::NodeRole::Base, sc.base});
    for (std::size_t r = 0; r < world_.relays.size(); ++r)
        nodes.push_back({static_cast<int>(r + 1), radio::NodeRole::Relay, world_.relays[r]});
    const int src = static_cast<int>(nodes.size());
    nodes.push_back({src, radio::NodeRole::Uav, world_.uavs[static_cast<std::size_t>(pending_->uav)].position()});
    radio::RadioMessage msg{next_message_id_++, src, 0, sc.report_bytes, 0};
    const auto rep = radio::flood_route(msg, nodes, sc.radio, rng_radio_, budget_, world_.t);
    if (!rep.delivered) return;
    world_.log.append({world_.t, EventKind::Found, pending_->uav, pending_->vessel, pending_->observed.x(),
                       pending_->observed.y(), static_cast<double>(rep.hops)});
    found_ = true;
    pending_.reset();
    if (sc.stop_on_found) end_mission(EndReason::Found);
}

void Simulation::camera_frame()
{
    for (std::size_t u = 0; u < agents_.size(); ++u) {
        const auto events = sensing::detect_frame(world_.uavs[u], static_cast<int>(u), world_.vessels, scenario_.camera,
                                                  scenario_.confusion, rng_detection_, world_.t);
        for (const auto &e : events) {
            world_.log.append({e.t, EventKind::Detection, e.uav, e.vessel_id, e.observed_position.x(),
                               e.observed_position.y(), static_cast<double>(e.observed_class)});
            if (e.observed_class == scenario_.target_class && !found_ && !pending_) {
                pending_ = PendingReport{e.uav, e.vessel_id, e.observed_position};
                deliver_reports();
                if (finished_) return;
            }
        }
    }
}

void Simulation::radar_tick()
{
    sensing::RadarModel radar = scenario_.radar;
    radar.position = scenario_.base;
    sensing::radar_scan(world_.vessels, radar, radar_map_, rng_radar_);
}

void Simulation::retarget_pursuits()
{
    bool any = false;
    for (const auto &a : agents_) any |= a.mode == Mode::Pursue;
    if (!any) return;
    const auto clusters = sensing::extract_targets(radar_map_, 0.3);
    for (auto &a : agents_) {
        if (a.mode != Mode::Pursue) continue;
        const Rect half = active_half(a.current.half);
        double best = kRetargetGate;
        for (const auto &c : clusters) {
            const Vec2 p = half.clamp(c.peak);
            const double dist = (p - a.aim).norm();
            if (dist < best) {
                best = dist;
                a.aim = p;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Mission flow

void Simulation::end_mission(EndReason reason)
{
    if (finished_) return;
    world_.log.append({world_.t, EventKind::MissionEnd, -1, 0, 0.0, 0.0, static_cast<double>(static_cast<int>(reason))});
    finished_ = true;
}

void Simulation::mission_logic()
{
    const auto &sc = scenario_;
    if (sc.strategy == Strategy::Informed && !planned_ && world_.t >= sc.radar_warmup - 1e-9) plan_informed_mission();

    if (planned_ && !trigger_.latched()) {
        const double progress = progress_total_ > 0 ? static_cast<double>(progress_done_) / progress_total_ : 1.0;
        if (trigger_.update(progress)) {
            world_.log.append({world_.t, EventKind::Trigger, -1, 0, 0.0, 0.0, progress});
            relays_moving_ = true;
            world_.relay_config = 1;
            if (sc.strategy != Strategy::Informed) assign_second_half();
        }
    }

    if (relays_moving_) {
        const double stepd = sc.relay_speed * sc.dt;
        bool moving = false;
        for (std::size_t r = 0; r < world_.relays.size(); ++r) {
            const Vec2 d = relay_home_[1][r] - world_.relays[r];
            const double len = d.norm();
            if (len <= stepd) {
                world_.relays[r] = relay_home_[1][r];
            } else {
                world_.relays[r] += d * (stepd / len);
                moving = true;
            }
        }
        relays_moving_ = moving;
    }

    bool all_done = planned_;
    for (std::size_t u = 0; u < agents_.size(); ++u) {
        refresh_done_flags(u);
        all_done = all_done && agents_[u].done[1];
    }
    if (all_done && !pattern_done_) {
        pattern_done_ = true;
        world_.log.append({world_.t, EventKind::PatternDone, -1, static_cast<int>(agents_.size()), 0.0, 0.0, 0.0});
        end_mission(EndReason::PatternDone);
        return;
    }
    if (world_.t >= sc.mission_limit - 1e-9) end_mission(EndReason::TimeLimit);
}

void Simulation::step()
{
    if (finished_) return;
    const auto &sc = scenario_;
    advance_vessels(world_.vessels, sc.zone, sc.dt);
    for (std::size_t u = 0; u < agents_.size(); ++u) fly(u);
    ++world_.step;
    world_.t = static_cast<double>(world_.step) * sc.dt;

    if (world_.step % ticks_per_second_ == 0) {
        localize_and_sample_comms();
        deliver_reports();
        if (finished_) return;
        if (sc.strategy == Strategy::Informed && planned_) retarget_pursuits();
    }
    if (world_.step % camera_period_ == 0) {
        camera_frame();
        if (finished_) return;
    }
    if (sc.strategy == Strategy::Informed && world_.step % radar_period_ == 0) radar_tick();
    mission_logic();
}

void Simulation::run(std::int64_t max_steps)
{
    for (std::int64_t k = 0; !finished_ && (max_steps < 0 || k < max_steps); ++k) step();
}

} // namespace seasearch
