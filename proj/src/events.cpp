#include "seasearch/events.hpp"

#include <array>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace seasearch {

namespace {

constexpr std::array<std::string_view, 8> kKindNames{"comm",     "locfix",       "detection",  "found",
                                                     "trigger",  "uav_done",     "pattern_done", "mission_end"};

} // namespace

std::string_view to_string(EventKind kind) { return kKindNames.at(static_cast<std::size_t>(kind)); }

EventKind event_kind_from_string(std::string_view name)
{
    for (std::size_t i = 0; i < kKindNames.size(); ++i)
        if (kKindNames[i] == name) return static_cast<EventKind>(i);
    throw std::invalid_argument("unknown event kind: " + std::string(name));
}

void EventLog::write_ndjson(std::ostream &out) const
{
    for (const auto &e : events_) {
        nlohmann::ordered_json j;
        j["t"] = e.t;
        j["kind"] = to_string(e.kind);
        j["subject"] = e.subject;
        j["object"] = e.object;
        j["x"] = e.x;
        j["y"] = e.y;
        j["value"] = e.value;
        out << j.dump() << '\n';
    }
}

std::string EventLog::to_ndjson() const
{
    std::ostringstream out;
    write_ndjson(out);
    return out.str();
}

EventLog EventLog::read_ndjson(std::istream &in)
{
    EventLog log;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            Event e;
            e.t = j.at("t").get<double>();
            e.kind = event_kind_from_string(j.at("kind").get<std::string>());
            e.subject = j.at("subject").get<int>();
            e.object = j.at("object").get<int>();
            e.x = j.at("x").get<double>();
            e.y = j.at("y").get<double>();
            e.value = j.at("value").get<double>();
            log.append(e);
        } catch (const nlohmann::json::exception &ex) {
            throw std::runtime_error("event log line " + std::to_string(line_no) + ": " + ex.what());
        }
    }
    return log;
}

} // namespace seasearch
