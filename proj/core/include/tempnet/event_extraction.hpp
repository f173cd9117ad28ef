#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tempnet/session_ingest.hpp"
#include "tempnet/types.hpp"

namespace tempnet {

/// A maximal interval [t_begin, t_end) during which the same set of at least
/// two users is attached to one access point.
struct EventInteraction {
  EventId id = 0;
  ApId ap;
  std::vector<UserIndex> members;  // sorted ascending
  Timestamp t_begin = 0;
  Timestamp t_end = 0;

  [[nodiscard]] bool contains(UserIndex u) const noexcept;

  friend bool operator==(const EventInteraction&, const EventInteraction&) = default;
};

/// Events plus the user dictionary their member indices refer to.
///
/// Events are kept sorted by (t_begin, ap, member names) and ids are the
/// positions in that order, so `set[id].id == id` and sorting by (t_begin, id)
/// is the storage order. The dictionary is sorted and may contain users that
/// appear in no event.
class EventSet {
 public:
  EventSet() = default;

  /// Normalizes (sorts users and members, orders events, reassigns ids) and
  /// validates. Throws InvariantError on size < 2, t_begin >= t_end, duplicate
  /// members or an out-of-range member index.
  EventSet(std::vector<UserId> users, std::vector<EventInteraction> events);

  [[nodiscard]] const std::vector<UserId>& users() const noexcept { return users_; }
  [[nodiscard]] const std::vector<EventInteraction>& events() const noexcept { return events_; }
  [[nodiscard]] std::size_t size() const noexcept { return events_.size(); }
  [[nodiscard]] bool empty() const noexcept { return events_.empty(); }
  [[nodiscard]] std::size_t population() const noexcept { return users_.size(); }

  [[nodiscard]] const EventInteraction& operator[](EventId id) const { return events_[id]; }
  [[nodiscard]] auto begin() const noexcept { return events_.begin(); }
  [[nodiscard]] auto end() const noexcept { return events_.end(); }

  [[nodiscard]] std::optional<UserIndex> find_user(std::string_view name) const;
  [[nodiscard]] const UserId& user_name(UserIndex u) const { return users_.at(u); }

  /// Γ(j) for every user: ids of the events each user takes part in, ascending.
  [[nodiscard]] std::vector<std::vector<EventId>> events_by_user() const;

  friend bool operator==(const EventSet&, const EventSet&) = default;

 private:
  std::vector<UserId> users_;
  std::vector<EventInteraction> events_;
};

/// Named description of one event, for building EventSets by hand.
struct EventSpec {
  ApId ap;
  std::vector<UserId> members;
  Timestamp t_begin = 0;
  Timestamp t_end = 0;
};

/// Builds an EventSet whose dictionary is the union of all members plus
/// `extra_users`.
EventSet make_event_set(std::span<const EventSpec> specs,
                        std::span<const UserId> extra_users = {});

/// Sweeps each access point's connect/disconnect change points and emits one
/// event per maximal constant-membership interval holding two or more users.
/// The dictionary holds every user seen in `sessions`.
EventSet extract_events(const SessionSet& sessions);

/// Events whose begin time lies in (t1, t2]; the dictionary is kept whole.
EventSet restrict_to_window(const EventSet& events, Window window);

[[nodiscard]] std::size_t event_size(const EventInteraction& e) noexcept;

/// Active duration in minutes.
[[nodiscard]] double event_duration(const EventInteraction& e) noexcept;

/// `event_id,ap,t_begin,t_end,size,members`, members ';'-joined.
void write_events_csv(std::ostream& out, const EventSet& events);

/// Reads the format written by write_events_csv. The dictionary becomes the
/// union of members. Ids are recomputed. Throws InputError on malformed rows.
EventSet read_events_csv(std::istream& in);

}  // namespace tempnet
