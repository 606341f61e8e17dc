#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace seasearch {

/// Event kinds recorded by a mission. Field meaning per kind:
///
/// | kind        | subject      | object            | x, y              | value                      |
/// |-------------|--------------|-------------------|-------------------|----------------------------|
/// | comm        | uav index    | relays in range   | uav true position | 1 if range report reached base |
/// | locfix      | uav index    | tier (0 = none)   | estimated position| horizontal error, m        |
/// | detection   | uav index    | vessel id         | observed position | observed class (-1 = miss) |
/// | found       | uav index    | vessel id         | observed position | report hop count           |
/// | trigger     | -1           | half index        | 0, 0              | waypoint progress          |
/// | uav_done    | uav index    | half index        | uav true position | 0                          |
/// | pattern_done| -1           | uav count         | 0, 0              | 0                          |
/// | mission_end | -1           | 0                 | 0, 0              | reason code                |
enum class EventKind : std::uint8_t { Comm, LocFix, Detection, Found, Trigger, UavDone, PatternDone, MissionEnd };

std::string_view to_string(EventKind kind);
EventKind event_kind_from_string(std::string_view name);

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::Comm;
    int subject = -1;
    int object = 0;
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;

    bool operator==(const Event &) const = default;
};

/// Append-only record of everything metrics are derived from.
class EventLog {
public:
    void append(const Event &e) { events_.push_back(e); }
    const std::vector<Event> &events() const { return events_; }
    bool empty() const { return events_.empty(); }
    std::size_t size() const { return events_.size(); }

    /// Newline-delimited JSON, fixed field order t, kind, subject, object, x, y, value.
    void write_ndjson(std::ostream &out) const;
    std::string to_ndjson() const;
    static EventLog read_ndjson(std::istream &in);

    bool operator==(const EventLog &) const = default;

private:
    std::vector<Event> events_;
};

} // namespace seasearch
