#pragma once

#include <string>
#include <vector>

#include "tempnet/event_extraction.hpp"
#include "tempnet/session_ingest.hpp"

namespace tempnet::testkit {

// Four users meet in two rooms: {a,b} at AP1, then b carries over to {b,c,d}
// at AP2. e is only ever alone.
SessionSet two_path_sessions();
EventSet two_path_events();
inline constexpr Timestamp kTwoPathWindowEnd = 600;

// Five event interactions at one AP (minutes): AB [0,50), AC [60,70),
// AB [70,80), ACD [80,90), BDE [90,100).
SessionSet five_event_sessions();
EventSet five_event_events();

// Builds an EventSet from (ap, members, begin, end) rows.
EventSet events_of(const std::vector<EventSpec>& specs, const std::vector<UserId>& extra = {});

}  // namespace tempnet::testkit
