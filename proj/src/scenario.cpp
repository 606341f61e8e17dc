#include "seasearch/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace seasearch {

using nlohmann::json;

std::string_view to_string(Strategy s)
{
    switch (s) {
    case Strategy::Parallel: return "parallel";
    case Strategy::Creeping: return "creeping";
    case Strategy::Spiral: return "spiral";
    case Strategy::Informed: return "informed";
    }
    return "?";
}

Strategy strategy_from_string(std::string_view name)
{
    if (name == "parallel") return Strategy::Parallel;
    if (name == "creeping") return Strategy::Creeping;
    if (name == "spiral") return Strategy::Spiral;
    if (name == "informed") return Strategy::Informed;
    throw ScenarioError("unknown strategy '" + std::string(name) + "' (expected parallel, creeping, spiral or informed)");
}

void Scenario::set_strategy(Strategy s)
{
    strategy = s;
    if (uav_count_auto) uav_count = default_uav_count(s);
}

void Scenario::validate() const
{
    if (!(zone.width() > 0.0) || !(zone.height() > 0.0)) throw ScenarioError("zone must have positive width and height");
    if (!(mission_limit > 0.0)) throw ScenarioError("mission_limit must be positive");
    if (!(dt > 0.0)) throw ScenarioError("dt must be positive");
    if (uav_count < 1 || uav_count > 3) throw ScenarioError("uav_count must be 1, 2 or 3");
    if (!(track_spacing > 0.0)) throw ScenarioError("track_spacing must be positive");
    if (track_spacing > camera.cross_track * altitude / camera.reference_height + 1e-9)
        throw ScenarioError("track_spacing exceeds the camera cross-track footprint");
    if (!(relay_spacing > 0.0)) throw ScenarioError("relay_spacing must be positive");
    if (!(altitude > 0.0)) throw ScenarioError("altitude must be positive");
    const double r_min = vehicle::min_turn_radius(uav_speed, vehicle.limits);
    if (fillet_radius < r_min)
        throw ScenarioError("fillet_radius " + std::to_string(fillet_radius) + " m is below the minimum turn radius " +
                            std::to_string(r_min) + " m at the configured speed and bank limit");
    if (target_class < 0 || target_class >= kVesselClassCount) throw ScenarioError("target_class out of range");
    if (!explicit_vessels && vessel_count < 0) throw ScenarioError("vessel_count must be >= 0");
    if (explicit_vessels && !vessels.empty()) {
        int targets = 0;
        for (const auto &v : vessels) {
            targets += v.is_target ? 1 : 0;
            if (!zone.contains(v.position)) throw ScenarioError("vessel position outside the zone");
            if (v.velocity.norm() > max_vessel_speed + 1e-9) throw ScenarioError("vessel speed exceeds max_vessel_speed");
        }
        if (targets == 0) throw ScenarioError("no target vessel declared");
        if (targets > 1) throw ScenarioError("more than one target vessel declared");
    }
    confusion.validate();
}

namespace {

Vec2 read_vec2(const json &j, const char *what)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ScenarioError(std::string(what) + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

void reject_unknown(const json &obj, const std::set<std::string> &known, const std::string &where)
{
    for (const auto &[key, _] : obj.items())
        if (!known.count(key)) throw ScenarioError("unknown key '" + key + "' in " + where);
}

template <typename T>
void read(const json &obj, const char *key, T &out)
{
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ScenarioError(std::string("bad value for '") + key + "': " + e.what());
    }
}

void read_gains(const json &obj, vehicle::PidGains &g, const std::string &where)
{
    reject_unknown(obj, {"kp", "ki", "kd", "integral_clamp_deg", "output_limit_deg"}, where);
    read(obj, "kp", g.kp);
    read(obj, "ki", g.ki);
    read(obj, "kd", g.kd);
    if (obj.contains("integral_clamp_deg")) g.integral_clamp = deg2rad(obj["integral_clamp_deg"].get<double>());
    if (obj.contains("output_limit_deg")) g.output_limit = deg2rad(obj["output_limit_deg"].get<double>());
}

void read_vehicle(const json &obj, vehicle::VehicleConfig &v)
{
    reject_unknown(obj, {"phi_max_deg", "theta_max_deg", "v_min", "v_max", "velocity_curve", "heading_pid", "altitude_pid"},
                   "vehicle");
    if (obj.contains("phi_max_deg")) v.limits.phi_max = deg2rad(obj["phi_max_deg"].get<double>());
    if (obj.contains("theta_max_deg")) v.limits.theta_max = deg2rad(obj["theta_max_deg"].get<double>());
    read(obj, "v_min", v.limits.v_min);
    read(obj, "v_max", v.limits.v_max);
    read(obj, "velocity_curve", v.curve.coefficients);
    if (obj.contains("heading_pid")) read_gains(obj["heading_pid"], v.gains.heading, "vehicle.heading_pid");
    if (obj.contains("altitude_pid")) read_gains(obj["altitude_pid"], v.gains.altitude, "vehicle.altitude_pid");
}

void read_radio(const json &obj, radio::LinkParams &r)
{
    reject_unknown(obj, {"tx_dbm", "l0_dbm", "fading_exponent", "sigma_db", "noise_floor_dbm", "d_max", "path_loss_sign",
                         "segment_rate_cap", "ttl"},
                   "radio");
    read(obj, "tx_dbm", r.tx_dbm);
    read(obj, "l0_dbm", r.l0_dbm);
    read(obj, "fading_exponent", r.fading_exponent);
    read(obj, "sigma_db", r.sigma_db);
    read(obj, "noise_floor_dbm", r.noise_floor_dbm);
    read(obj, "d_max", r.d_max);
    read(obj, "segment_rate_cap", r.segment_rate_cap);
    read(obj, "ttl", r.ttl);
    if (obj.contains("path_loss_sign")) {
        const auto s = obj["path_loss_sign"].get<std::string>();
        if (s == "minus") r.path_loss_sign = radio::PathLossSign::PhysicalMinus;
        else if (s == "plus") r.path_loss_sign = radio::PathLossSign::PaperPlus;
        else throw ScenarioError("radio.path_loss_sign must be 'minus' or 'plus'");
    }
    if (!(r.d_max > 0.0) || !(r.sigma_db > 0.0)) throw ScenarioError("radio: d_max and sigma_db must be positive");
}

void read_camera(const json &obj, sensing::CameraModel &c, sensing::ConfusionMatrix &cm)
{
    reject_unknown(obj, {"tilt_deg", "cross_track", "along_track", "reference_height", "frame_rate", "position_sigma",
                         "confusion"},
                   "camera");
    if (obj.contains("tilt_deg")) c.tilt = deg2rad(obj["tilt_deg"].get<double>());
    read(obj, "cross_track", c.cross_track);
    read(obj, "along_track", c.along_track);
    read(obj, "reference_height", c.reference_height);
    read(obj, "frame_rate", c.frame_rate);
    read(obj, "position_sigma", c.position_sigma);
    if (obj.contains("confusion")) {
        const auto &rows = obj["confusion"];
        if (!rows.is_array() || rows.size() != kVesselClassCount)
            throw ScenarioError("camera.confusion: expected 7 rows of [miss, A..G]");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!rows[i].is_array() || rows[i].size() != kVesselClassCount + 1)
                throw ScenarioError("camera.confusion: each row needs 8 entries [miss, A..G]");
            for (std::size_t k = 0; k < rows[i].size(); ++k) cm.rows[i][k] = rows[i][k].get<double>();
        }
    }
    if (!(c.frame_rate > 0.0)) throw ScenarioError("camera.frame_rate must be positive");
}

void read_radar(const json &obj, sensing::RadarModel &r)
{
    reject_unknown(obj, {"range", "scan_period", "sigma", "decay"}, "radar");
    read(obj, "range", r.range);
    read(obj, "scan_period", r.scan_period);
    read(obj, "sigma", r.sigma);
    read(obj, "decay", r.decay);
    if (!(r.scan_period > 0.0) || !(r.sigma > 0.0)) throw ScenarioError("radar: scan_period and sigma must be positive");
}

} // namespace

Scenario parse_scenario(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
    reject_unknown(doc,
                   {"seed", "strategy", "zone", "mission_limit", "uav_count", "vessels", "vessel_count", "target_class",
                    "target_speed", "max_vessel_speed", "base", "anchor_offset", "relay_layout", "relay_spacing",
                    "relay_speed", "reposition_threshold", "dt", "uav_speed", "altitude", "fillet_radius",
                    "track_spacing", "stop_on_found", "use_estimate", "radar_warmup", "report_bytes", "vehicle", "radio",
                    "camera", "radar"},
                   "scenario");

    Scenario s;
    try {
        if (doc.contains("seed")) {
            const auto &j = doc["seed"];
            if (!j.is_number_integer()) throw ScenarioError("seed must be an integer");
            s.seed = j.is_number_unsigned() ? j.get<std::uint64_t>() : static_cast<std::uint64_t>(j.get<std::int64_t>());
        }
        if (doc.contains("zone")) {
            const auto &z = doc["zone"];
            reject_unknown(z, {"x0", "y0", "x1", "y1"}, "zone");
            read(z, "x0", s.zone.x0);
            read(z, "y0", s.zone.y0);
            read(z, "x1", s.zone.x1);
            read(z, "y1", s.zone.y1);
        }
        read(doc, "mission_limit", s.mission_limit);
        if (doc.contains("strategy")) s.strategy = strategy_from_string(doc["strategy"].get<std::string>());
        if (doc.contains("uav_count")) {
            s.uav_count = doc["uav_count"].get<int>();
            s.uav_count_auto = false;
        } else {
            s.uav_count = default_uav_count(s.strategy);
        }
        if (doc.contains("target_class")) s.target_class = class_from_letter(doc["target_class"].get<std::string>());
        read(doc, "vessel_count", s.vessel_count);
        read(doc, "target_speed", s.target_speed);
        read(doc, "max_vessel_speed", s.max_vessel_speed);
        if (doc.contains("vessels")) {
            s.explicit_vessels = true;
            for (const auto &v : doc["vessels"]) {
                reject_unknown(v, {"class", "position", "velocity", "is_target"}, "vessels[]");
                VesselSpec spec;
                if (v.contains("class")) spec.vessel_class = class_from_letter(v["class"].get<std::string>());
                if (!v.contains("position")) throw ScenarioError("vessels[]: position is required");
                spec.position = read_vec2(v["position"], "vessels[].position");
                if (v.contains("velocity")) spec.velocity = read_vec2(v["velocity"], "vessels[].velocity");
                read(v, "is_target", spec.is_target);
                s.vessels.push_back(spec);
            }
        }
        if (doc.contains("base")) s.base = read_vec2(doc["base"], "base");
        read(doc, "anchor_offset", s.anchor_offset);
        if (doc.contains("relay_layout"))
            for (const auto &p : doc["relay_layout"]) s.relay_layout.push_back(read_vec2(p, "relay_layout[]"));
        read(doc, "relay_spacing", s.relay_spacing);
        read(doc, "relay_speed", s.relay_speed);
        read(doc, "reposition_threshold", s.reposition_threshold);
        read(doc, "dt", s.dt);
        read(doc, "uav_speed", s.uav_speed);
        read(doc, "altitude", s.altitude);
        read(doc, "fillet_radius", s.fillet_radius);
        read(doc, "track_spacing", s.track_spacing);
        read(doc, "stop_on_found", s.stop_on_found);
        read(doc, "use_estimate", s.use_estimate);
        read(doc, "radar_warmup", s.radar_warmup);
        read(doc, "report_bytes", s.report_bytes);
        if (doc.contains("vehicle")) read_vehicle(doc["vehicle"], s.vehicle);
        if (doc.contains("radio")) read_radio(doc["radio"], s.radio);
        if (doc.contains("camera")) read_camera(doc["camera"], s.camera, s.confusion);
        if (doc.contains("radar")) read_radar(doc["radar"], s.radar);
    } catch (const json::exception &e) {
        throw ScenarioError(std::string("scenario type error: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ScenarioError(e.what());
    }
    s.radar.position = s.base;
    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const ScenarioError &e) {
        throw ScenarioError(path.string() + ": " + e.what());
    }
}

std::vector<Vessel> spawn_random_vessels(Rng &rng, const Rect &zone, int n, int target_class, const SpawnOptions &options)
{
    if (n < 1) throw std::invalid_argument("spawn_random_vessels: n must be >= 1");
    std::uniform_real_distribution<double> ux(zone.x0, zone.x1);
    std::uniform_real_distribution<double> uy(zone.y0, zone.y1);
    std::uniform_real_distribution<double> heading(-kPi, kPi);
    std::uniform_real_distribution<double> speed(0.0, options.max_speed);
    std::uniform_int_distribution<int> other_class(0, kVesselClassCount - 2);

    std::vector<Vessel> out;
    for (int i = 0; i < n; ++i) {
        Vessel v;
        v.id = i;
        v.is_target = (i == 0);
        if (v.is_target) {
            v.vessel_class = target_class;
        } else {
            const int c = other_class(rng);
            v.vessel_class = c >= target_class ? c + 1 : c;
        }
        const double x = ux(rng);
        const double y = uy(rng);
        v.position = {x, y};
        const double psi = heading(rng);
        const double spd = v.is_target ? options.target_speed : speed(rng);
        v.velocity = spd * Vec2(std::cos(psi), std::sin(psi));
        out.push_back(v);
    }
    return out;
}

void advance_vessels(std::vector<Vessel> &vessels, const Rect &zone, double dt)
{
    for (auto &v : vessels) {
        v.position += dt * v.velocity;
        for (int axis = 0; axis < 2; ++axis) {
            const double lo = axis == 0 ? zone.x0 : zone.y0;
            const double hi = axis == 0 ? zone.x1 : zone.y1;
            double &p = v.position[axis];
            if (p < lo) {
                p = 2.0 * lo - p;
                v.velocity[axis] = -v.velocity[axis];
            } else if (p > hi) {
                p = 2.0 * hi - p;
                v.velocity[axis] = -v.velocity[axis];
            }
            p = std::clamp(p, lo, hi);
        }
    }
}

} // namespace seasearch
