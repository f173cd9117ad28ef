#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tempnet/event_extraction.hpp"
#include "tempnet/types.hpp"

namespace tempnet {

/// Directed temporal contact i -> j. `inception` is the begin time of the
/// first event of the latest time-respecting chain from i to j.
struct TemporalContact {
  UserIndex from = 0;
  UserIndex to = 0;
  Timestamp inception = 0;
  bool bidirectional = false;

  friend bool operator==(const TemporalContact&, const TemporalContact&) = default;
};

struct TemporalContactNetwork {
  Window window;
  std::size_t population = 0;       // size of the source dictionary
  std::vector<UserIndex> vertices;  // users active in the window, ascending
  std::vector<TemporalContact> edges;  // sorted by (from, to)

  [[nodiscard]] bool is_vertex(UserIndex u) const;
  [[nodiscard]] const TemporalContact* find(UserIndex from, UserIndex to) const;
  [[nodiscard]] std::vector<UserIndex> reachable_from(UserIndex from) const;
  [[nodiscard]] std::size_t out_degree(UserIndex u) const;
  [[nodiscard]] std::size_t in_degree(UserIndex u) const;
};

/// Time-respecting closure over the events beginning in (t1, t2]. Chains
/// follow non-decreasing begin times; events sharing a begin time may chain
/// in either order. An empty window yields an empty network.
TemporalContactNetwork build_tcn(const EventSet& events, Window window);

/// Number of users temporally reachable from `user`. nullopt when the index
/// is outside the dictionary; 0 for known users inactive in the window.
std::optional<std::size_t> reachability(const TemporalContactNetwork& tcn, UserIndex user);
std::optional<std::size_t> reachability(const TemporalContactNetwork& tcn,
                                        const EventSet& events, std::string_view user);

/// Static co-appearance network over the same window semantics.
struct StaticContactNetwork {
  Window window;
  std::size_t population = 0;
  std::vector<UserIndex> vertices;
  std::vector<std::pair<UserIndex, UserIndex>> edges;  // first < second, sorted
  std::vector<UserIndex> component_label;              // per dictionary user; smallest member
  std::vector<std::size_t> component_sizes;            // per dictionary user; 0 if inactive

  [[nodiscard]] std::size_t component_size(UserIndex u) const;
  [[nodiscard]] std::vector<UserIndex> component(UserIndex u) const;
  [[nodiscard]] std::vector<std::size_t> degrees() const;  // per vertex, vertex order
};

StaticContactNetwork build_acn(const EventSet& events, Window window);

/// Consecutive windows of `length` seconds covering every event begin time.
/// The first window starts one second before the earliest begin.
struct Tiling {
  std::vector<Window> windows;
  bool truncated = false;  // the covered span is not a whole number of lengths
};

Tiling tile_windows(const EventSet& events, Timestamp length);

enum class ReachMode { average, maximum };

struct ReachabilityPoint {
  Timestamp delta_t = 0;
  double tcn_avg = 0.0;
  double acn_avg = 0.0;
  double tcn_max = 0.0;
  double acn_max = 0.0;
  std::size_t windows = 0;  // windows with at least one vertex
  bool truncated = false;

  [[nodiscard]] double tcn(ReachMode mode) const {
    return mode == ReachMode::average ? tcn_avg : tcn_max;
  }
  [[nodiscard]] double acn(ReachMode mode) const {
    return mode == ReachMode::average ? acn_avg : acn_max;
  }
};

/// For each length: per-window mean and max of vertex reachability divided by
/// the window's vertex count, averaged over windows. ACN reachability of a
/// vertex is its component size minus one. Throws ParameterError on a
/// non-positive length.
std::vector<ReachabilityPoint> reachability_curves(const EventSet& events,
                                                   std::span<const Timestamp> lengths);

struct DegreeRecord {
  UserIndex user = 0;
  std::size_t d_out = 0;
  std::size_t d_in = 0;
  Timestamp window_length = 0;
};

std::vector<DegreeRecord> degree_records(const TemporalContactNetwork& tcn);

/// C(d_out, d_in): per-window normalized histograms averaged over windows.
struct JointDegreeDistribution {
  Timestamp window_length = 0;
  std::size_t windows = 0;
  std::map<std::pair<std::size_t, std::size_t>, double> probability;
};

JointDegreeDistribution joint_degree_distribution(const EventSet& events, Timestamp length);

/// Preset window lengths in days, used by the CLI.
inline constexpr int kPresetWindowDays[] = {1, 2, 3, 5, 7, 8};

void write_tcn_csv(std::ostream& out, const TemporalContactNetwork& tcn, const EventSet& events);
void write_curve_csv(std::ostream& out, std::span<const ReachabilityPoint> curve);
void write_joint_csv(std::ostream& out, const JointDegreeDistribution& joint);

}  // namespace tempnet
