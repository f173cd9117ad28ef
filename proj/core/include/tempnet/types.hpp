#pragma once

#include <cstdint>
#include <string>

namespace tempnet {

/// Epoch seconds, UTC.
using Timestamp = std::int64_t;

using UserId = std::string;
using ApId = std::string;

/// Dense index into an EventSet's user dictionary. The dictionary is sorted,
/// so index order is lexicographic name order.
using UserIndex = std::uint32_t;

/// Dense event identifier; equals the event's position in its EventSet.
using EventId = std::uint32_t;

inline constexpr Timestamp kSecondsPerMinute = 60;
inline constexpr Timestamp kSecondsPerDay = 86400;
inline constexpr double kMinutesPerDay = 1440.0;

/// Local-day offset of the original data-collection locale (UTC+8).
inline constexpr int kDefaultTzOffsetMinutes = 480;

/// Observation window. An event belongs to the window when its begin time
/// lies in (t1, t2].
struct Window {
  Timestamp t1 = 0;
  Timestamp t2 = 0;

  [[nodiscard]] constexpr bool contains(Timestamp t) const noexcept {
    return t1 < t && t <= t2;
  }
  [[nodiscard]] constexpr Timestamp length() const noexcept { return t2 - t1; }
  [[nodiscard]] constexpr bool empty() const noexcept { return t2 <= t1; }

  friend constexpr bool operator==(const Window&, const Window&) = default;
};

}  // namespace tempnet
