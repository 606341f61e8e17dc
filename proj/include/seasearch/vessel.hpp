#pragma once

#include <stdexcept>
#include <string>

#include "seasearch/geometry.hpp"

namespace seasearch {

inline constexpr int kVesselClassCount = 7;

/// Vessel classes A..G as 0..6.
inline char class_letter(int cls) { return static_cast<char>('A' + cls); }

inline int class_from_letter(const std::string &s)
{
    if (s.size() != 1 || s[0] < 'A' || s[0] >= 'A' + kVesselClassCount)
        throw std::invalid_argument("vessel class must be one of A..G, got '" + s + "'");
    return s[0] - 'A';
}

inline constexpr int kClassE = 4;

struct Vessel {
    int id = 0;
    int vessel_class = 0;
    Vec2 position{0.0, 0.0};
    Vec2 velocity{0.0, 0.0};
    bool is_target = false;
};

} // namespace seasearch
