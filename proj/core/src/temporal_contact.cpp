#include "tempnet/temporal_contact.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "bitset.hpp"
#include "tempnet/errors.hpp"
#include "window_util.hpp"

namespace tempnet {
namespace {

// Maps dictionary indices to dense local indices for one window.
struct LocalIndex {
  std::vector<UserIndex> vertices;
  std::vector<std::int32_t> local;  // -1 when inactive

  LocalIndex(std::span<const EventInteraction> span, std::size_t population)
      : local(population, -1) {
    for (const auto& e : span) {
      for (auto m : e.members) local[m] = 0;
    }
    for (std::size_t u = 0; u < population; ++u) {
      if (local[u] >= 0) {
        local[u] = static_cast<std::int32_t>(vertices.size());
        vertices.push_back(static_cast<UserIndex>(u));
      }
    }
  }
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

auto edge_key(const TemporalContact& c) { return std::pair(c.from, c.to); }

}  // namespace

bool TemporalContactNetwork::is_vertex(UserIndex u) const {
  return std::binary_search(vertices.begin(), vertices.end(), u);
}

const TemporalContact* TemporalContactNetwork::find(UserIndex from, UserIndex to) const {
  const auto key = std::pair(from, to);
  auto it = std::lower_bound(edges.begin(), edges.end(), key,
                             [](const TemporalContact& c, auto k) { return edge_key(c) < k; });
  if (it == edges.end() || edge_key(*it) != key) return nullptr;
  return &*it;
}

std::vector<UserIndex> TemporalContactNetwork::reachable_from(UserIndex from) const {
  std::vector<UserIndex> out;
  auto it = std::lower_bound(edges.begin(), edges.end(), from,
                             [](const TemporalContact& c, UserIndex f) { return c.from < f; });
  for (; it != edges.end() && it->from == from; ++it) out.push_back(it->to);
  return out;
}

std::size_t TemporalContactNetwork::out_degree(UserIndex u) const {
  auto lo = std::lower_bound(edges.begin(), edges.end(), u,
                             [](const TemporalContact& c, UserIndex f) { return c.from < f; });
  auto hi = std::upper_bound(lo, edges.end(), u,
                             [](UserIndex f, const TemporalContact& c) { return f < c.from; });
  return static_cast<std::size_t>(hi - lo);
}

std::size_t TemporalContactNetwork::in_degree(UserIndex u) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [u](const TemporalContact& c) { return c.to == u; }));
}

TemporalContactNetwork build_tcn(const EventSet& events, Window window) {
  TemporalContactNetwork tcn;
  tcn.window = window;
  tcn.population = events.population();
  const auto span = detail::events_in(events, window);
  if (span.empty()) return tcn;

  LocalIndex index(span, events.population());
  const std::size_t n = index.vertices.size();
  tcn.vertices = index.vertices;

  // reach[u]: users reachable by chains that start at an already processed
  // event containing u. Sweeping backward in time, the first time a pair is
  // recorded carries the latest possible inception.
  std::vector<detail::DenseBitset> reach(n, detail::DenseBitset(n));
  std::vector<std::vector<std::int32_t>> local_members(span.size());
  for (std::size_t k = 0; k < span.size(); ++k) {
    for (auto m : span[k].members) local_members[k].push_back(index.local[m]);
  }

  std::size_t hi = span.size();
  while (hi > 0) {
    std::size_t lo = hi - 1;
    const Timestamp t = span[lo].t_begin;
    while (lo > 0 && span[lo - 1].t_begin == t) --lo;

    // Events sharing a begin time chain in either order: iterate to a fixpoint.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = lo; k < hi; ++k) {
        detail::DenseBitset carried(n);
        for (auto w : local_members[k]) {
          carried.set(static_cast<std::size_t>(w));
          carried.merge(reach[static_cast<std::size_t>(w)]);
        }
        for (auto u : local_members[k]) {
          const auto from = index.vertices[static_cast<std::size_t>(u)];
          changed |= reach[static_cast<std::size_t>(u)].absorb(carried, [&](std::size_t j) {
            if (static_cast<std::int32_t>(j) != u) {
              tcn.edges.push_back({from, index.vertices[j], t, false});
            }
          });
        }
      }
    }
    hi = lo;
  }

  std::sort(tcn.edges.begin(), tcn.edges.end(),
            [](const TemporalContact& a, const TemporalContact& b) { return edge_key(a) < edge_key(b); });
  for (auto& c : tcn.edges) c.bidirectional = tcn.find(c.to, c.from) != nullptr;
  return tcn;
}

std::optional<std::size_t> reachability(const TemporalContactNetwork& tcn, UserIndex user) {
  if (user >= tcn.population) return std::nullopt;
  return tcn.out_degree(user);
}

std::optional<std::size_t> reachability(const TemporalContactNetwork& tcn, const EventSet& events,
                                        std::string_view user) {
  const auto idx = events.find_user(user);
  if (!idx) return std::nullopt;
  return reachability(tcn, *idx);
}

std::size_t StaticContactNetwork::component_size(UserIndex u) const {
  return u < component_sizes.size() ? component_sizes[u] : 0;
}

std::vector<UserIndex> StaticContactNetwork::component(UserIndex u) const {
  std::vector<UserIndex> out;
  if (component_size(u) == 0) return out;
  for (auto v : vertices) {
    if (component_label[v] == component_label[u]) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> StaticContactNetwork::degrees() const {
  std::vector<std::size_t> deg(vertices.size(), 0);
  auto pos = [&](UserIndex u) {
    return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), u) -
                                    vertices.begin());
  };
  for (const auto& [a, b] : edges) {
    ++deg[pos(a)];
    ++deg[pos(b)];
  }
  return deg;
}

StaticContactNetwork build_acn(const EventSet& events, Window window) {
  StaticContactNetwork acn;
  acn.window = window;
  acn.population = events.population();
  acn.component_label.assign(events.population(), 0);
  acn.component_sizes.assign(events.population(), 0);
  const auto span = detail::events_in(events, window);
  if (span.empty()) return acn;

  LocalIndex index(span, events.population());
  acn.vertices = index.vertices;
  UnionFind uf(index.vertices.size());
  for (const auto& e : span) {
    for (std::size_t a = 0; a < e.members.size(); ++a) {
      for (std::size_t b = a + 1; b < e.members.size(); ++b) {
        acn.edges.emplace_back(e.members[a], e.members[b]);
      }
      if (a > 0) {
        uf.unite(static_cast<std::size_t>(index.local[e.members[0]]),
                 static_cast<std::size_t>(index.local[e.members[a]]));
      }
    }
  }
  std::sort(acn.edges.begin(), acn.edges.end());
  acn.edges.erase(std::unique(acn.edges.begin(), acn.edges.end()), acn.edges.end());

  // Label each component by its smallest member.
  std::vector<UserIndex> root_label(index.vertices.size(), 0);
  std::vector<bool> labelled(index.vertices.size(), false);
  for (std::size_t k = 0; k < index.vertices.size(); ++k) {
    const auto r = uf.find(k);
    if (!labelled[r]) {
      labelled[r] = true;
      root_label[r] = index.vertices[k];
    }
    acn.component_label[index.vertices[k]] = root_label[r];
    acn.component_sizes[index.vertices[k]] = uf.size_of(k);
  }
  return acn;
}

Tiling tile_windows(const EventSet& events, Timestamp length) {
  if (length <= 0) throw ParameterError("window length must be positive");
  Tiling tiling;
  if (events.empty()) return tiling;
  const Timestamp origin = events.events().front().t_begin - 1;
  const Timestamp span = events.events().back().t_begin - origin;
  const Timestamp count = (span + length - 1) / length;
  for (Timestamp k = 0; k < count; ++k) {
    tiling.windows.push_back({origin + k * length, origin + (k + 1) * length});
  }
  tiling.truncated = span % length != 0;
  return tiling;
}

std::vector<ReachabilityPoint> reachability_curves(const EventSet& events,
                                                   std::span<const Timestamp> lengths) {
  std::vector<ReachabilityPoint> curve;
  for (const Timestamp length : lengths) {
    const auto tiling = tile_windows(events, length);
    ReachabilityPoint point;
    point.delta_t = length;
    point.truncated = tiling.truncated;
    for (const auto& w : tiling.windows) {
      const auto tcn = build_tcn(events, w);
      if (tcn.vertices.empty()) continue;
      const auto acn = build_acn(events, w);
      const double n = static_cast<double>(tcn.vertices.size());

      std::vector<std::size_t> out_deg(events.population(), 0);
      for (const auto& c : tcn.edges) ++out_deg[c.from];

      double tcn_sum = 0.0, acn_sum = 0.0, tcn_max = 0.0, acn_max = 0.0;
      for (auto v : tcn.vertices) {
        const double t_reach = static_cast<double>(out_deg[v]) / n;
        const double a_reach = static_cast<double>(acn.component_size(v) - 1) / n;
        tcn_sum += t_reach;
        acn_sum += a_reach;
        tcn_max = std::max(tcn_max, t_reach);
        acn_max = std::max(acn_max, a_reach);
      }
      point.tcn_avg += tcn_sum / n;
      point.acn_avg += acn_sum / n;
      point.tcn_max += tcn_max;
      point.acn_max += acn_max;
      ++point.windows;
    }
    if (point.windows > 0) {
      const double w = static_cast<double>(point.windows);
      point.tcn_avg /= w;
      point.acn_avg /= w;
      point.tcn_max /= w;
      point.acn_max /= w;
    }
    curve.push_back(point);
  }
  return curve;
}

std::vector<DegreeRecord> degree_records(const TemporalContactNetwork& tcn) {
  std::vector<std::size_t> d_out(tcn.population, 0), d_in(tcn.population, 0);
  for (const auto& c : tcn.edges) {
    ++d_out[c.from];
    ++d_in[c.to];
  }
  std::vector<DegreeRecord> records;
  records.reserve(tcn.vertices.size());
  for (auto v : tcn.vertices) {
    records.push_back({v, d_out[v], d_in[v], tcn.window.length()});
  }
  return records;
}

JointDegreeDistribution joint_degree_distribution(const EventSet& events, Timestamp length) {
  JointDegreeDistribution joint;
  joint.window_length = length;
  const auto tiling = tile_windows(events, length);
  for (const auto& w : tiling.windows) {
    const auto records = degree_records(build_tcn(events, w));
    if (records.empty()) continue;
    const double weight = 1.0 / static_cast<double>(records.size());
    for (const auto& r : records) joint.probability[{r.d_out, r.d_in}] += weight;
    ++joint.windows;
  }
  if (joint.windows > 0) {
    for (auto& [key, p] : joint.probability) p /= static_cast<double>(joint.windows);
  }
  return joint;
}

void write_tcn_csv(std::ostream& out, const TemporalContactNetwork& tcn, const EventSet& events) {
  out << "from,to,inception,bidirectional\n";
  for (const auto& c : tcn.edges) {
    out << events.user_name(c.from) << ',' << events.user_name(c.to) << ',' << c.inception << ','
        << (c.bidirectional ? 1 : 0) << '\n';
  }
}

void write_curve_csv(std::ostream& out, std::span<const ReachabilityPoint> curve) {
  out << "delta_t_seconds,tcn_avg,acn_avg,tcn_max,acn_max\n";
  const auto old_precision = out.precision(17);
  for (const auto& p : curve) {
    out << p.delta_t << ',' << p.tcn_avg << ',' << p.acn_avg << ',' << p.tcn_max << ','
        << p.acn_max << '\n';
  }
  out.precision(old_precision);
}

void write_joint_csv(std::ostream& out, const JointDegreeDistribution& joint) {
  out << "d_out,d_in,probability\n";
  const auto old_precision = out.precision(17);
  for (const auto& [key, p] : joint.probability) {
    out << key.first << ',' << key.second << ',' << p << '\n';
  }
  out.precision(old_precision);
}

}  // namespace tempnet
