#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "seasearch/geometry.hpp"

namespace seasearch::guidance {

/// Half-plane { p : (p - point) . normal >= 0 }.
struct HalfPlane {
    Vec2 point;
    Vec2 normal;

    bool crossed(const Vec2 &p) const { return (p - point).dot(normal) >= 0.0; }
};

struct Fillet {
    HalfPlane h1; ///< entry; normal is the unit vector of the incoming segment
    HalfPlane h2; ///< exit; normal is the unit vector of the outgoing segment
    Vec2 center;
    int direction = 1; ///< +1 counter-clockwise (left) turn, -1 clockwise
    double radius = 0.0;
};

class DegenerateTurn : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LineParams {
    double approach_angle = kPi / 3.0; ///< s
    double length_scale = 30.0;        ///< k, metres
};

struct OrbitParams {
    double gain = 2.0;
};

/// Straight-line heading law. Cross-track error e is positive left of the segment.
double desired_heading_straight(const Vec2 &w_prev, const Vec2 &w_next, const Vec2 &position,
                                const LineParams &params = {});

/// Signed cross-track error, positive when position is left of w_prev -> w_next.
double cross_track_error(const Vec2 &w_prev, const Vec2 &w_next, const Vec2 &position);

/// Fillet arc joining segments w_prev -> w_i -> w_next. Throws DegenerateTurn when the
/// waypoints are collinear (or reverse) within 1e-6 rad.
Fillet fillet_geometry(const Vec2 &w_prev, const Vec2 &w_i, const Vec2 &w_next, double radius);

/// Heading command for orbiting `center` at `radius` in `direction`.
double orbit_heading(const Vec2 &center, double radius, int direction, const Vec2 &position,
                     const OrbitParams &params = {});

/// Waypoint path with per-corner fillet radii. Corner radii are reduced where the
/// nominal radius would push a tangent point past the middle of an adjoining segment.
class WaypointPath {
public:
    WaypointPath() = default;
    WaypointPath(std::vector<Vec2> waypoints, double radius);

    const std::vector<Vec2> &waypoints() const { return waypoints_; }
    double radius() const { return radius_; }
    std::size_t size() const { return waypoints_.size(); }
    bool empty() const { return waypoints_.empty(); }

    /// Fillet at interior waypoint i (1 <= i <= n-2); empty for degenerate corners.
    const std::optional<Fillet> &fillet(std::size_t i) const { return fillets_.at(i); }

    /// Total length of the flown geometric path (segments shortened by fillets plus arcs).
    double length() const;

private:
    std::vector<Vec2> waypoints_;
    std::vector<std::optional<Fillet>> fillets_;
    double radius_ = 0.0;
};

/// One piece of the geometric path: either a line segment or a circular arc.
struct PathPiece {
    enum class Kind { Line, Arc } kind = Kind::Line;
    Vec2 start;
    Vec2 end;
    Vec2 center;      ///< arcs only
    double radius = 0; ///< arcs only
    int direction = 1; ///< arcs only

    Vec2 start_tangent() const;
    Vec2 end_tangent() const;
    double length() const;
};

/// Expands a path into alternating line and arc pieces.
std::vector<PathPiece> expand_path(const WaypointPath &path);

/// Distance from p to the nearest expanded path piece.
double distance_to_path(const std::vector<PathPiece> &pieces, const Vec2 &p);

enum class Phase { StraightLine, Orbit, Loiter };

struct FollowerState {
    std::size_t target = 1; ///< index of the waypoint currently flown toward
    Phase phase = Phase::StraightLine;
    Vec2 orbit_center{0.0, 0.0};
    int orbit_direction = 1;
    double orbit_radius = 0.0;
};

struct FollowerOutput {
    double heading = 0.0;
    double roll_ff = 0.0;
    bool advanced = false;
    bool finished = false; ///< terminal waypoint reached, loitering
};

struct FollowerParams {
    LineParams line;
    OrbitParams orbit;
    double speed = 25.0; ///< used for roll feed-forward on arcs
};

/// Fillet path-following state machine.
FollowerOutput follower_step(FollowerState &follower, const WaypointPath &path, const Vec2 &position,
                             const FollowerParams &params = {});

} // namespace seasearch::guidance
