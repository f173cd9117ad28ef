#pragma once

#include <algorithm>
#include <span>

#include "tempnet/event_extraction.hpp"

namespace tempnet::detail {

/// Events with begin time in (t1, t2]; relies on begin-time storage order.
inline std::span<const EventInteraction> events_in(const EventSet& events, Window w) {
  const auto& all = events.events();
  auto first = std::upper_bound(all.begin(), all.end(), w.t1,
                                [](Timestamp t, const EventInteraction& e) { return t < e.t_begin; });
  auto last = std::upper_bound(first, all.end(), w.t2,
                               [](Timestamp t, const EventInteraction& e) { return t < e.t_begin; });
  if (w.empty()) return {};
  return {first, last};
}

}  // namespace tempnet::detail
