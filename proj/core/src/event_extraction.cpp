#include "tempnet/event_extraction.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <unordered_map>

#include "csv_util.hpp"
#include "tempnet/errors.hpp"

namespace tempnet {

bool EventInteraction::contains(UserIndex u) const noexcept {
  return std::binary_search(members.begin(), members.end(), u);
}

EventSet::EventSet(std::vector<UserId> users, std::vector<EventInteraction> events) {
  std::vector<UserId> sorted = users;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  // Remap when the caller's dictionary was not already sorted and unique.
  std::vector<UserIndex> remap(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    remap[i] = static_cast<UserIndex>(
        std::lower_bound(sorted.begin(), sorted.end(), users[i]) - sorted.begin());
  }

  for (auto& e : events) {
    for (auto& m : e.members) {
      if (m >= users.size()) throw_invariant("event member index out of range");
      m = remap[m];
    }
    std::sort(e.members.begin(), e.members.end());
    if (std::adjacent_find(e.members.begin(), e.members.end()) != e.members.end()) {
      throw_invariant("duplicate member in event");
    }
    if (e.members.size() < 2) throw_invariant("event size below 2");
    if (e.t_begin >= e.t_end) throw_invariant("event with non-positive duration");
  }

  std::sort(events.begin(), events.end(), [](const EventInteraction& a, const EventInteraction& b) {
    return std::tie(a.t_begin, a.ap, a.members) < std::tie(b.t_begin, b.ap, b.members);
  });
  for (std::size_t i = 0; i < events.size(); ++i) events[i].id = static_cast<EventId>(i);

  users_ = std::move(sorted);
  events_ = std::move(events);
}

std::optional<UserIndex> EventSet::find_user(std::string_view name) const {
  const auto it = std::lower_bound(users_.begin(), users_.end(), name);
  if (it == users_.end() || *it != name) return std::nullopt;
  return static_cast<UserIndex>(it - users_.begin());
}

std::vector<std::vector<EventId>> EventSet::events_by_user() const {
  std::vector<std::vector<EventId>> gamma(users_.size());
  for (const auto& e : events_) {
    for (auto m : e.members) gamma[m].push_back(e.id);
  }
  return gamma;
}

EventSet make_event_set(std::span<const EventSpec> specs, std::span<const UserId> extra_users) {
  std::vector<UserId> users(extra_users.begin(), extra_users.end());
  for (const auto& s : specs) users.insert(users.end(), s.members.begin(), s.members.end());
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());

  std::vector<EventInteraction> events;
  events.reserve(specs.size());
  for (const auto& s : specs) {
    EventInteraction e;
    e.ap = s.ap;
    e.t_begin = s.t_begin;
    e.t_end = s.t_end;
    for (const auto& m : s.members) {
      e.members.push_back(static_cast<UserIndex>(
          std::lower_bound(users.begin(), users.end(), m) - users.begin()));
    }
    events.push_back(std::move(e));
  }
  return EventSet(std::move(users), std::move(events));
}

EventSet extract_events(const SessionSet& sessions) {
  std::vector<UserId> users;
  users.reserve(sessions.sessions.size());
  for (const auto& s : sessions.sessions) users.push_back(s.user);
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  auto index_of = [&](const UserId& name) {
    return static_cast<UserIndex>(std::lower_bound(users.begin(), users.end(), name) -
                                  users.begin());
  };

  struct Change {
    Timestamp t;
    UserIndex user;
    int delta;  // +1 connect, -1 disconnect
  };
  std::map<std::string_view, std::vector<Change>> by_ap;
  for (const auto& s : sessions.sessions) {
    auto& changes = by_ap[s.ap];
    const auto u = index_of(s.user);
    changes.push_back({s.t_connect, u, +1});
    changes.push_back({s.t_disconnect, u, -1});
  }

  std::vector<EventInteraction> events;
  for (auto& [ap, changes] : by_ap) {
    std::sort(changes.begin(), changes.end(), [](const Change& a, const Change& b) {
      return std::tie(a.t, a.user, a.delta) < std::tie(b.t, b.user, b.delta);
    });

    // Attachment counts tolerate uncleaned input where one user holds two
    // sessions at the same AP.
    std::map<UserIndex, int> present;
    std::vector<UserIndex> current;  // membership of the open interval
    Timestamp open_since = 0;

    auto close_interval = [&](Timestamp until) {
      if (current.size() >= 2 && until > open_since) {
        events.push_back(EventInteraction{0, std::string(ap), current, open_since, until});
      }
    };

    std::size_t i = 0;
    while (i < changes.size()) {
      const Timestamp t = changes[i].t;
      for (; i < changes.size() && changes[i].t == t; ++i) {
        auto& count = present[changes[i].user];
        count += changes[i].delta;
        if (count == 0) present.erase(changes[i].user);
      }
      std::vector<UserIndex> next;
      next.reserve(present.size());
      for (const auto& [u, c] : present) next.push_back(u);
      if (next == current) continue;  // zero-length gap: membership unchanged
      close_interval(t);
      current = std::move(next);
      open_since = t;
    }
  }
  return EventSet(std::move(users), std::move(events));
}

EventSet restrict_to_window(const EventSet& events, Window window) {
  std::vector<EventInteraction> kept;
  for (const auto& e : events) {
    if (window.contains(e.t_begin)) kept.push_back(e);
  }
  return EventSet(events.users(), std::move(kept));
}

std::size_t event_size(const EventInteraction& e) noexcept { return e.members.size(); }

double event_duration(const EventInteraction& e) noexcept {
  return static_cast<double>(e.t_end - e.t_begin) / static_cast<double>(kSecondsPerMinute);
}

void write_events_csv(std::ostream& out, const EventSet& events) {
  out << "event_id,ap,t_begin,t_end,size,members\n";
  for (const auto& e : events) {
    out << e.id << ',' << e.ap << ',' << e.t_begin << ',' << e.t_end << ',' << e.members.size()
        << ',';
    for (std::size_t k = 0; k < e.members.size(); ++k) {
      if (k) out << ';';
      out << events.user_name(e.members[k]);
    }
    out << '\n';
  }
}

EventSet read_events_csv(std::istream& in) {
  if (!in) throw InputError("unreadable event source");
  std::vector<EventSpec> specs;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim_line_end(raw);
    if (detail::is_skippable(line)) continue;
    if (!seen_header) {
      if (detail::strip(line) != "event_id,ap,t_begin,t_end,size,members") {
        throw InputError("line " + std::to_string(line_no) + ": expected event CSV header");
      }
      seen_header = true;
      continue;
    }
    const auto fields = detail::split(line, ',');
    auto fail = [&](const std::string& why) {
      throw InputError("line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 6) fail("expected 6 fields");
    const auto t_begin = detail::parse_int<Timestamp>(fields[2]);
    const auto t_end = detail::parse_int<Timestamp>(fields[3]);
    const auto size = detail::parse_int<std::size_t>(fields[4]);
    if (!t_begin || !t_end || !size) fail("bad numeric field");
    EventSpec spec{std::string(detail::strip(fields[1])), {}, *t_begin, *t_end};
    for (auto m : detail::split(fields[5], ';')) spec.members.emplace_back(detail::strip(m));
    if (spec.members.size() != *size) fail("size does not match member count");
    if (spec.members.size() < 2 || spec.t_begin >= spec.t_end) fail("invalid event");
    specs.push_back(std::move(spec));
  }
  if (!seen_header) throw InputError("missing event CSV header");
  return make_event_set(specs);
}

}  // namespace tempnet
