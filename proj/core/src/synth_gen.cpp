#include "tempnet/synth_gen.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "csv_util.hpp"
#include "tempnet/errors.hpp"

namespace tempnet {
namespace {

constexpr std::size_t kWeekdays = 5;
constexpr Timestamp kWeek = 7 * kSecondsPerDay;
constexpr double kArrivalSpread = 0.1;

std::string numbered(char const* prefix, std::size_t i, std::size_t count) {
  std::ostringstream s;
  const int width = static_cast<int>(std::to_string(count).size());
  s << prefix << std::setw(width) << std::setfill('0') << i + 1;
  return s.str();
}

struct Course {
  std::size_t weekday;
  std::size_t slot;
  std::size_t ap;
};

// One user's accepted intervals, for rejecting overlapping additions.
class Calendar {
 public:
  bool try_add(Timestamp a, Timestamp b) {
    auto it = spans_.lower_bound({a, a});
    if (it != spans_.end() && it->first < b) return false;
    if (it != spans_.begin() && std::prev(it)->second > a) return false;
    spans_.emplace(a, b);
    return true;
  }

 private:
  std::set<std::pair<Timestamp, Timestamp>> spans_;
};

Timestamp minutes(double m) { return static_cast<Timestamp>(std::llround(m * 60.0)); }

}  // namespace

void GeneratorConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ParameterError(std::string("generator config: ") + what);
  };
  require(n_users >= 1, "n_users must be >= 1");
  require(n_aps >= 1, "n_aps must be >= 1");
  require(n_weeks >= 1, "n_weeks must be >= 1");
  require(slots_per_day >= 1 && slots_per_day <= 10, "slots_per_day must be in [1, 10]");
  require(attendance_prob >= 0.0 && attendance_prob <= 1.0, "attendance_prob must be in [0, 1]");
  require(session_jitter_minutes >= 0.0 && session_jitter_minutes <= 60.0,
          "session_jitter_minutes must be in [0, 60]");
  require(heavy_tail_exponent > 1.0, "heavy_tail_exponent must exceed 1");
  require(max_courses_per_user >= 1, "max_courses_per_user must be >= 1");
  require(resident_fraction >= 0.0 && resident_fraction <= 1.0, "resident_fraction must be in [0, 1]");
  require(free_sessions_per_week >= 0.0, "free_sessions_per_week must be >= 0");
  require(free_session_min_minutes > 0.0, "free_session_min_minutes must be positive");
}

GeneratorConfig parse_generator_config(std::istream& in, GeneratorConfig cfg) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::trim_line_end(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    auto fail = [&](const std::string& why) {
      throw ParameterError("config line " + std::to_string(line_no) + ": " + why);
    };
    if (eq == std::string_view::npos) fail("expected key = value");
    const std::string key(detail::strip(line.substr(0, eq)));
    const std::string value(detail::strip(line.substr(eq + 1)));

    auto as_u64 = [&]() {
      auto v = detail::parse_int<std::uint64_t>(value);
      if (!v) fail("bad integer for " + key);
      return *v;
    };
    auto as_i64 = [&]() {
      auto v = detail::parse_int<std::int64_t>(value);
      if (!v) fail("bad integer for " + key);
      return *v;
    };
    auto as_double = [&]() {
      try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) fail("bad number for " + key);
        return v;
      } catch (const std::logic_error&) {
        fail("bad number for " + key);
      }
      return 0.0;
    };
    auto as_bool = [&]() {
      if (value == "true" || value == "1") return true;
      if (value == "false" || value == "0") return false;
      fail("bad boolean for " + key);
      return false;
    };

    if (key == "seed") cfg.seed = as_u64();
    else if (key == "n_users") cfg.n_users = as_u64();
    else if (key == "n_aps") cfg.n_aps = as_u64();
    else if (key == "n_weeks") cfg.n_weeks = as_u64();
    else if (key == "slots_per_day") cfg.slots_per_day = as_u64();
    else if (key == "attendance_prob") cfg.attendance_prob = as_double();
    else if (key == "session_jitter_minutes") cfg.session_jitter_minutes = as_double();
    else if (key == "heavy_tail_exponent") cfg.heavy_tail_exponent = as_double();
    else if (key == "n_courses") cfg.n_courses = as_u64();
    else if (key == "resident_fraction") cfg.resident_fraction = as_double();
    else if (key == "max_courses_per_user") cfg.max_courses_per_user = as_u64();
    else if (key == "free_sessions_per_week") cfg.free_sessions_per_week = as_double();
    else if (key == "free_session_min_minutes") cfg.free_session_min_minutes = as_double();
    else if (key == "weekly_timetable") cfg.weekly_timetable = as_bool();
    else if (key == "start") cfg.start = as_i64();
    else if (key == "tz_offset_minutes") cfg.tz_offset_minutes = static_cast<int>(as_i64());
    else fail("unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

SessionSet generate(const GeneratorConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto index = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  std::vector<std::string> users, aps;
  for (std::size_t i = 0; i < cfg.n_users; ++i) users.push_back(numbered("u", i, cfg.n_users));
  for (std::size_t i = 0; i < cfg.n_aps; ++i) aps.push_back(numbered("ap", i, cfg.n_aps));

  // Course catalog: distinct (weekday, slot, ap) cells.
  const std::size_t cells = kWeekdays * cfg.slots_per_day * cfg.n_aps;
  const std::size_t n_courses = std::min(cells, cfg.n_courses ? cfg.n_courses : 4 * cfg.n_aps);
  std::vector<std::size_t> cell_ids(cells);
  for (std::size_t i = 0; i < cells; ++i) cell_ids[i] = i;
  std::shuffle(cell_ids.begin(), cell_ids.end(), rng);
  std::vector<Course> courses;
  for (std::size_t i = 0; i < n_courses; ++i) {
    const auto c = cell_ids[i];
    courses.push_back({c / (cfg.slots_per_day * cfg.n_aps), (c / cfg.n_aps) % cfg.slots_per_day,
                       c % cfg.n_aps});
  }

  std::vector<std::vector<std::size_t>> by_weekday(kWeekdays);
  for (std::size_t c = 0; c < courses.size(); ++c) by_weekday[courses[c].weekday].push_back(c);

  // Enrollment: no two courses of one user share a (weekday, slot).
  std::vector<std::vector<std::size_t>> enrolled(cfg.n_users);
  for (std::size_t u = 0; u < cfg.n_users; ++u) {
    if (chance(cfg.resident_fraction)) {
      for (const auto& day : by_weekday) {
        if (!day.empty()) enrolled[u].push_back(day[index(day.size())]);
      }
      continue;
    }
    const std::size_t want = 1 + index(cfg.max_courses_per_user);
    std::set<std::pair<std::size_t, std::size_t>> busy;
    for (std::size_t attempt = 0; attempt < 4 * want && enrolled[u].size() < want; ++attempt) {
      const auto c = index(courses.size());
      if (busy.insert({courses[c].weekday, courses[c].slot}).second) enrolled[u].push_back(c);
    }
  }

  const double jitter = cfg.session_jitter_minutes;
  auto slot_start = [&](std::size_t week, std::size_t weekday, std::size_t slot) {
    return cfg.start + static_cast<Timestamp>(week) * kWeek +
           static_cast<Timestamp>(weekday) * kSecondsPerDay +
           (kFirstSlotMinute + static_cast<Timestamp>(slot) * kSlotSpacingMinutes) * kSecondsPerMinute;
  };

  SessionSet out;
  out.tz_offset_minutes = cfg.tz_offset_minutes;
  std::vector<Calendar> calendars(cfg.n_users);
  auto emit = [&](std::size_t u, std::size_t ap, Timestamp a, Timestamp b) {
    if (b > a && calendars[u].try_add(a, b)) out.sessions.push_back({users[u], aps[ap], a, b});
  };

  if (cfg.weekly_timetable) {
    for (std::size_t week = 0; week < cfg.n_weeks; ++week) {
      for (std::size_t c = 0; c < courses.size(); ++c) {
        const Timestamp shift = minutes(uniform(0.0, jitter));
        const Timestamp begin = slot_start(week, courses[c].weekday, courses[c].slot) + shift;
        const Timestamp end = begin + kSlotMinutes * kSecondsPerMinute;
        for (std::size_t u = 0; u < cfg.n_users; ++u) {
          if (std::find(enrolled[u].begin(), enrolled[u].end(), c) == enrolled[u].end()) continue;
          if (!chance(cfg.attendance_prob)) continue;
          emit(u, courses[c].ap, begin + minutes(uniform(0.0, jitter * kArrivalSpread)), end);
        }
      }
    }
  } else {
    // Negative control: same expected volume, no weekly structure.
    const double span_days = 7.0 * static_cast<double>(cfg.n_weeks);
    for (std::size_t u = 0; u < cfg.n_users; ++u) {
      const std::size_t count = enrolled[u].size() * cfg.n_weeks;
      for (std::size_t k = 0; k < count; ++k) {
        if (!chance(cfg.attendance_prob)) continue;
        const Timestamp begin = cfg.start + minutes(uniform(0.0, span_days * kMinutesPerDay));
        emit(u, index(cfg.n_aps), begin, begin + kSlotMinutes * kSecondsPerMinute);
      }
    }
  }

  // Off-schedule sessions: weekday evenings after the last slot, or weekends.
  const double tail = 1.0 / (cfg.heavy_tail_exponent - 1.0);
  const double evening = kFirstSlotMinute +
                         static_cast<double>(cfg.slots_per_day) * kSlotSpacingMinutes;
  std::poisson_distribution<std::size_t> per_week(std::max(cfg.free_sessions_per_week, 1e-9));
  for (std::size_t u = 0; u < cfg.n_users; ++u) {
    for (std::size_t week = 0; week < cfg.n_weeks; ++week) {
      const auto count = cfg.free_sessions_per_week > 0 ? per_week(rng) : 0;
      for (std::size_t k = 0; k < count; ++k) {
        const double u01 = uniform(std::numeric_limits<double>::min(), 1.0);
        const double length = std::min(cfg.free_session_min_minutes * std::pow(u01, -tail), 720.0);
        const auto day = index(7);
        const double from = day < kWeekdays ? evening : 8 * 60.0;
        const Timestamp begin = cfg.start + static_cast<Timestamp>(week) * kWeek +
                                static_cast<Timestamp>(day) * kSecondsPerDay +
                                minutes(uniform(from, std::max(from, 22 * 60.0)));
        emit(u, index(cfg.n_aps), begin, begin + std::max<Timestamp>(1, minutes(length)));
      }
    }
  }

  std::sort(out.sessions.begin(), out.sessions.end(), session_less);
  return out;
}

}  // namespace tempnet
