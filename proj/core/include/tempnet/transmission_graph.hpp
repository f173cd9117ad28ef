#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "tempnet/event_extraction.hpp"
#include "tempnet/types.hpp"

namespace tempnet {

/// Directed edge between two event interactions. `shared_users` are the sink
/// members whose most recent earlier event is `source`.
struct TransmissionEdge {
  EventId source = 0;
  EventId sink = 0;
  std::vector<UserIndex> shared_users;  // sorted ascending, non-empty
  Timestamp t_source = 0;
  Timestamp t_sink = 0;

  /// δ = t_sink - t_source, in minutes.
  [[nodiscard]] double delta_minutes() const noexcept;

  friend bool operator==(const TransmissionEdge&, const TransmissionEdge&) = default;
};

/// Vertices are the events of the EventSet the graph was built from (by id).
struct TransmissionGraph {
  std::size_t vertex_count = 0;
  std::vector<TransmissionEdge> edges;  // sorted by (sink, source)

  [[nodiscard]] std::vector<std::size_t> in_degrees() const;
  [[nodiscard]] std::vector<std::size_t> out_degrees() const;
  /// in-degree + out-degree per event.
  [[nodiscard]] std::vector<std::size_t> degrees() const;
};

/// Multi-edges collapsed, time labels dropped.
struct AggregatedTransmissionGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<EventId, EventId>> edges;  // first < second, sorted, unique
  std::vector<std::size_t> degree;                 // raw in + out degree per event
  std::vector<std::size_t> simple_degree;          // degree in the collapsed graph
};

/// For every sink event and member u, the source is u's latest event with a
/// strictly smaller begin time. Members are grouped by source, one edge per
/// group. Runs in O(M log M) for M events.
TransmissionGraph build_tg(const EventSet& events);

AggregatedTransmissionGraph aggregate_tg(const TransmissionGraph& tg);

/// δ in minutes for every edge, ordered by (t_sink, source id).
std::vector<double> transmission_durations(const TransmissionGraph& tg);

/// `source_id,sink_id,t_source,t_sink,shared_users`, users ';'-joined.
void write_tg_csv(std::ostream& out, const TransmissionGraph& tg, const EventSet& events);
/// `event_a,event_b`
void write_aggregate_csv(std::ostream& out, const AggregatedTransmissionGraph& agg);
/// `event_id,degree`
void write_degree_csv(std::ostream& out, const AggregatedTransmissionGraph& agg);

}  // namespace tempnet
