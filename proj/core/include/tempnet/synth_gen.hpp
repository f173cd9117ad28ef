#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include "tempnet/session_ingest.hpp"
#include "tempnet/types.hpp"

namespace tempnet {

/// Monday 2009-10-19 00:00 at UTC+8.
inline constexpr Timestamp kDefaultSynthStart = 1255881600;

/// Campus timetable model. Courses meet once a week in a fixed
/// (weekday, slot, AP). Residents take one course on every weekday; the other
/// users take up to `max_courses_per_user` courses. Each meeting is attended
/// with `attendance_prob` and starts late by up to `session_jitter_minutes`;
/// attendees arrive within a tenth of that and leave together. Off-schedule
/// sessions fall on evenings and weekends with Pareto-distributed durations.
struct GeneratorConfig {
  std::uint64_t seed = 42;
  std::size_t n_users = 200;
  std::size_t n_aps = 10;
  std::size_t n_weeks = 4;
  std::size_t slots_per_day = 5;
  double attendance_prob = 0.85;
  double session_jitter_minutes = 10.0;
  double heavy_tail_exponent = 2.0;  // density ~ d^-exponent for free sessions

  std::size_t n_courses = 0;  // 0 = 4 per access point
  double resident_fraction = 0.5;
  std::size_t max_courses_per_user = 1;
  double free_sessions_per_week = 0.5;
  double free_session_min_minutes = 5.0;
  bool weekly_timetable = true;  // false: same session volume at random times
  Timestamp start = kDefaultSynthStart;  // local midnight of a Monday
  int tz_offset_minutes = kDefaultTzOffsetMinutes;

  /// ParameterError when a field is out of range.
  void validate() const;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

inline constexpr int kSlotMinutes = 120;
inline constexpr int kSlotSpacingMinutes = 130;
inline constexpr int kFirstSlotMinute = 8 * 60;

/// Flat `key = value` lines over the field names above; '#' starts a comment.
/// Unknown keys and malformed values throw ParameterError.
GeneratorConfig parse_generator_config(std::istream& in, GeneratorConfig base = {});

/// Deterministic for a given config. The result is already clean: no user
/// holds overlapping sessions.
SessionSet generate(const GeneratorConfig& config);

}  // namespace tempnet
