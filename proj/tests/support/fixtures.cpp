#include "fixtures.hpp"

#include <algorithm>

namespace tempnet::testkit {

SessionSet two_path_sessions() {
  SessionSet s;
  s.sessions = {{"a", "AP1", 100, 200}, {"b", "AP1", 100, 200}, {"b", "AP2", 200, 300},
                {"c", "AP2", 150, 300}, {"d", "AP2", 200, 300}, {"e", "AP1", 400, 500}};
  std::sort(s.sessions.begin(), s.sessions.end(), session_less);
  return s;
}

EventSet two_path_events() {
  return events_of({{"AP1", {"a", "b"}, 100, 200}, {"AP2", {"b", "c", "d"}, 200, 300}}, {"e"});
}

SessionSet five_event_sessions() {
  constexpr Timestamp m = 60;
  SessionSet s;
  s.sessions = {{"A", "ap", 0 * m, 90 * m},  {"B", "ap", 0 * m, 50 * m},
                {"B", "ap", 70 * m, 80 * m}, {"B", "ap", 90 * m, 100 * m},
                {"C", "ap", 60 * m, 70 * m}, {"C", "ap", 80 * m, 90 * m},
                {"D", "ap", 80 * m, 100 * m}, {"E", "ap", 90 * m, 100 * m}};
  std::sort(s.sessions.begin(), s.sessions.end(), session_less);
  return s;
}

EventSet five_event_events() {
  constexpr Timestamp m = 60;
  return events_of({{"ap", {"A", "B"}, 0 * m, 50 * m},
                    {"ap", {"A", "C"}, 60 * m, 70 * m},
                    {"ap", {"A", "B"}, 70 * m, 80 * m},
                    {"ap", {"A", "C", "D"}, 80 * m, 90 * m},
                    {"ap", {"B", "D", "E"}, 90 * m, 100 * m}});
}

EventSet events_of(const std::vector<EventSpec>& specs, const std::vector<UserId>& extra) {
  return make_event_set(specs, extra);
}

}  // namespace tempnet::testkit
