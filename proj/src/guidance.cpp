#include "seasearch/guidance.hpp"

#include <limits>

namespace seasearch::guidance {

namespace {

constexpr double kCollinearTol = 1e-6;

Vec2 perp_left(const Vec2 &v) { return {-v.y(), v.x()}; }

} // namespace

double cross_track_error(const Vec2 &w_prev, const Vec2 &w_next, const Vec2 &position)
{
    const Vec2 q = (w_next - w_prev).normalized();
    return cross2(q, position - w_prev);
}

double desired_heading_straight(const Vec2 &w_prev, const Vec2 &w_next, const Vec2 &position,
                                const LineParams &params)
{
    const Vec2 d = w_next - w_prev;
    const double course = std::atan2(d.y(), d.x());
    const double e = cross_track_error(w_prev, w_next, position);
    return wrap_angle(course - params.approach_angle * (2.0 / kPi) * std::atan(e / params.length_scale));
}

Fillet fillet_geometry(const Vec2 &w_prev, const Vec2 &w_i, const Vec2 &w_next, double radius)
{
    const Vec2 q_in = (w_i - w_prev).normalized();
    const Vec2 q_out = (w_next - w_i).normalized();
    const double turn = std::atan2(cross2(q_in, q_out), q_in.dot(q_out));
    if (std::abs(turn) < kCollinearTol || kPi - std::abs(turn) < kCollinearTol)
        throw DegenerateTurn("fillet_geometry: collinear or reversing waypoints");

    // rho is the interior angle between the two segments at w_i.
    const double rho = kPi - std::abs(turn);
    const double tangent_distance = radius / std::tan(0.5 * rho);
    const double center_distance = radius / std::sin(0.5 * rho);

    Fillet f;
    f.radius = radius;
    f.direction = turn > 0.0 ? 1 : -1;
    f.h1 = {w_i - tangent_distance * q_in, q_in};
    f.h2 = {w_i + tangent_distance * q_out, q_out};
    f.center = w_i - (q_in - q_out).normalized() * center_distance;
    return f;
}

double orbit_heading(const Vec2 &center, double radius, int direction, const Vec2 &position,
                     const OrbitParams &params)
{
    const Vec2 r = position - center;
    const double d = r.norm();
    const double phase = std::atan2(r.y(), r.x());
    return wrap_angle(phase + direction * (0.5 * kPi + std::atan(params.gain * (d - radius) / radius)));
}

WaypointPath::WaypointPath(std::vector<Vec2> waypoints, double radius) : waypoints_(std::move(waypoints)), radius_(radius)
{
    if (radius <= 0.0) throw std::invalid_argument("WaypointPath: fillet radius must be positive");
    for (std::size_t i = 1; i < waypoints_.size(); ++i)
        if ((waypoints_[i] - waypoints_[i - 1]).norm() < 1e-9)
            throw std::invalid_argument("WaypointPath: consecutive waypoints must be distinct");

    fillets_.assign(waypoints_.size(), std::nullopt);
    for (std::size_t i = 1; i + 1 < waypoints_.size(); ++i) {
        const Vec2 &a = waypoints_[i - 1];
        const Vec2 &b = waypoints_[i];
        const Vec2 &c = waypoints_[i + 1];
        const Vec2 q_in = (b - a).normalized();
        const Vec2 q_out = (c - b).normalized();
        const double turn = std::atan2(cross2(q_in, q_out), q_in.dot(q_out));
        if (std::abs(turn) < kCollinearTol || kPi - std::abs(turn) < kCollinearTol) continue;
        const double rho = kPi - std::abs(turn);
        const double room = 0.5 * std::min((b - a).norm(), (c - b).norm());
        const double r = std::min(radius, room * std::tan(0.5 * rho));
        fillets_[i] = fillet_geometry(a, b, c, r);
    }
}

double WaypointPath::length() const
{
    double total = 0.0;
    for (const auto &piece : expand_path(*this)) total += piece.length();
    return total;
}

Vec2 PathPiece::start_tangent() const
{
    if (kind == Kind::Line) return (end - start).normalized();
    return direction * perp_left((start - center) / radius);
}

Vec2 PathPiece::end_tangent() const
{
    if (kind == Kind::Line) return (end - start).normalized();
    return direction * perp_left((end - center) / radius);
}

double PathPiece::length() const
{
    if (kind == Kind::Line) return (end - start).norm();
    const Vec2 a = start - center;
    const Vec2 b = end - center;
    double sweep = std::atan2(cross2(a, b), a.dot(b)) * direction;
    if (sweep < 0.0) sweep += 2.0 * kPi;
    return sweep * radius;
}

std::vector<PathPiece> expand_path(const WaypointPath &path)
{
    std::vector<PathPiece> pieces;
    const auto &w = path.waypoints();
    if (w.size() < 2) return pieces;
    Vec2 cursor = w.front();
    for (std::size_t i = 1; i < w.size(); ++i) {
        const bool corner = i + 1 < w.size() && path.fillet(i).has_value();
        if (!corner) {
            if (i + 1 < w.size()) continue; // degenerate corner: line continues through w_i
            pieces.push_back({PathPiece::Kind::Line, cursor, w[i], {}, 0.0, 1});
            break;
        }
        const Fillet &f = *path.fillet(i);
        pieces.push_back({PathPiece::Kind::Line, cursor, f.h1.point, {}, 0.0, 1});
        pieces.push_back({PathPiece::Kind::Arc, f.h1.point, f.h2.point, f.center, f.radius, f.direction});
        cursor = f.h2.point;
    }
    return pieces;
}

double distance_to_path(const std::vector<PathPiece> &pieces, const Vec2 &p)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto &piece : pieces) {
        if (piece.kind == PathPiece::Kind::Line) {
            best = std::min(best, point_segment_distance(p, piece.start, piece.end));
            continue;
        }
        // Arc: radial distance if p lies within the swept angle, else nearest endpoint.
        const Vec2 a = piece.start - piece.center;
        const Vec2 b = piece.end - piece.center;
        const Vec2 r = p - piece.center;
        auto sweep_to = [&](const Vec2 &v) {
            double s = std::atan2(cross2(a, v), a.dot(v)) * piece.direction;
            if (s < 0.0) s += 2.0 * kPi;
            return s;
        };
        const double total = sweep_to(b);
        if (r.norm() > 0.0 && sweep_to(r) <= total)
            best = std::min(best, std::abs(r.norm() - piece.radius));
        best = std::min({best, (p - piece.start).norm(), (p - piece.end).norm()});
    }
    return best;
}

FollowerOutput follower_step(FollowerState &follower, const WaypointPath &path, const Vec2 &position,
                             const FollowerParams &params)
{
    FollowerOutput out;
    const auto &w = path.waypoints();
    if (w.empty()) return out;

    auto loiter = [&](const Vec2 &center) {
        follower.phase = Phase::Loiter;
        follower.orbit_center = center;
        follower.orbit_direction = 1;
        follower.orbit_radius = path.radius();
    };

    if (w.size() == 1 && follower.phase != Phase::Loiter) loiter(w.front());

    // Bounded loop: each pass either returns or advances the phase machine.
    for (std::size_t guard = 0; guard < 2 * w.size() + 4; ++guard) {
        if (follower.phase == Phase::Loiter) {
            out.finished = true;
            out.heading = orbit_heading(follower.orbit_center, follower.orbit_radius, follower.orbit_direction, position,
                                        params.orbit);
            out.roll_ff = follower.orbit_direction *
                          std::atan(params.speed * params.speed / (kGravity * follower.orbit_radius));
            return out;
        }

        const std::size_t i = follower.target;
        const Vec2 &a = w[i - 1];
        const Vec2 &b = w[i];
        const bool terminal = i + 1 >= w.size();

        if (follower.phase == Phase::StraightLine) {
            if (terminal) {
                if (HalfPlane{b, (b - a).normalized()}.crossed(position)) {
                    loiter(b);
                    out.advanced = true;
                    continue;
                }
            } else if (const auto &f = path.fillet(i); f.has_value()) {
                if (f->h1.crossed(position)) {
                    follower.phase = Phase::Orbit;
                    follower.orbit_center = f->center;
                    follower.orbit_direction = f->direction;
                    follower.orbit_radius = f->radius;
                    continue;
                }
            } else if (HalfPlane{b, (b - a).normalized()}.crossed(position)) {
                ++follower.target; // degenerate corner: no orbit phase
                out.advanced = true;
                continue;
            }
            out.heading = desired_heading_straight(a, b, position, params.line);
            out.roll_ff = 0.0;
            return out;
        }

        // Orbit phase around fillet i.
        const auto &f = path.fillet(i);
        if (f->h2.crossed(position)) {
            ++follower.target;
            follower.phase = Phase::StraightLine;
            out.advanced = true;
            continue;
        }
        out.heading = orbit_heading(f->center, f->radius, f->direction, position, params.orbit);
        out.roll_ff = f->direction * std::atan(params.speed * params.speed / (kGravity * f->radius));
        return out;
    }
    return out;
}

} // namespace seasearch::guidance
