#include "tempnet/transmission_graph.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace tempnet {
namespace {
constexpr EventId kNoEvent = std::numeric_limits<EventId>::max();
}

double TransmissionEdge::delta_minutes() const noexcept {
  return static_cast<double>(t_sink - t_source) / static_cast<double>(kSecondsPerMinute);
}

std::vector<std::size_t> TransmissionGraph::in_degrees() const {
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : edges) ++deg[e.sink];
  return deg;
}

std::vector<std::size_t> TransmissionGraph::out_degrees() const {
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : edges) ++deg[e.source];
  return deg;
}

std::vector<std::size_t> TransmissionGraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : edges) {
    ++deg[e.source];
    ++deg[e.sink];
  }
  return deg;
}

TransmissionGraph build_tg(const EventSet& events) {
  TransmissionGraph tg;
  tg.vertex_count = events.size();
  const auto& all = events.events();

  std::vector<EventId> last(events.population(), kNoEvent);
  std::vector<std::pair<EventId, UserIndex>> priors;

  std::size_t lo = 0;
  while (lo < all.size()) {
    std::size_t hi = lo + 1;
    while (hi < all.size() && all[hi].t_begin == all[lo].t_begin) ++hi;

    // Sources must begin strictly earlier, so `last` only advances once the
    // whole equal-begin group has been linked.
    for (std::size_t k = lo; k < hi; ++k) {
      const auto& sink = all[k];
      priors.clear();
      for (auto u : sink.members) {
        if (last[u] != kNoEvent) priors.emplace_back(last[u], u);
      }
      std::sort(priors.begin(), priors.end());
      for (std::size_t i = 0; i < priors.size();) {
        TransmissionEdge edge;
        edge.source = priors[i].first;
        edge.sink = sink.id;
        edge.t_source = all[edge.source].t_begin;
        edge.t_sink = sink.t_begin;
        for (; i < priors.size() && priors[i].first == edge.source; ++i) {
          edge.shared_users.push_back(priors[i].second);
        }
        tg.edges.push_back(std::move(edge));
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      for (auto u : all[k].members) last[u] = all[k].id;
    }
    lo = hi;
  }
  return tg;
}

AggregatedTransmissionGraph aggregate_tg(const TransmissionGraph& tg) {
  AggregatedTransmissionGraph agg;
  agg.vertex_count = tg.vertex_count;
  agg.degree = tg.degrees();
  agg.edges.reserve(tg.edges.size());
  for (const auto& e : tg.edges) {
    agg.edges.emplace_back(std::min(e.source, e.sink), std::max(e.source, e.sink));
  }
  std::sort(agg.edges.begin(), agg.edges.end());
  agg.edges.erase(std::unique(agg.edges.begin(), agg.edges.end()), agg.edges.end());
  agg.simple_degree.assign(agg.vertex_count, 0);
  for (const auto& [a, b] : agg.edges) {
    ++agg.simple_degree[a];
    ++agg.simple_degree[b];
  }
  return agg;
}

std::vector<double> transmission_durations(const TransmissionGraph& tg) {
  std::vector<const TransmissionEdge*> order;
  order.reserve(tg.edges.size());
  for (const auto& e : tg.edges) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return std::pair(a->t_sink, a->source) < std::pair(b->t_sink, b->source);
  });
  std::vector<double> deltas;
  deltas.reserve(order.size());
  for (const auto* e : order) deltas.push_back(e->delta_minutes());
  return deltas;
}

void write_tg_csv(std::ostream& out, const TransmissionGraph& tg, const EventSet& events) {
  out << "source_id,sink_id,t_source,t_sink,shared_users\n";
  for (const auto& e : tg.edges) {
    out << e.source << ',' << e.sink << ',' << e.t_source << ',' << e.t_sink << ',';
    for (std::size_t k = 0; k < e.shared_users.size(); ++k) {
      if (k) out << ';';
      out << events.user_name(e.shared_users[k]);
    }
    out << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const AggregatedTransmissionGraph& agg) {
  out << "event_a,event_b\n";
  for (const auto& [a, b] : agg.edges) out << a << ',' << b << '\n';
}

void write_degree_csv(std::ostream& out, const AggregatedTransmissionGraph& agg) {
  out << "event_id,degree\n";
  for (std::size_t id = 0; id < agg.vertex_count; ++id) out << id << ',' << agg.degree[id] << '\n';
}

}  // namespace tempnet
