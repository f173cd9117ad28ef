#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tempnet/event_extraction.hpp"
#include "tempnet/transmission_graph.hpp"

namespace tempnet {

enum class Binning { linear, logarithmic };

/// Bin k covers [edges[k], edges[k+1]).
struct Histogram {
  Binning binning = Binning::linear;
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  std::vector<double> probabilities;
  std::vector<double> markers;  // reference points, same unit as the edges

  [[nodiscard]] bool empty() const noexcept { return counts.empty(); }
  [[nodiscard]] std::size_t total() const noexcept;
  [[nodiscard]] std::size_t bins() const noexcept { return counts.size(); }
};

struct LogBinning {
  double factor = 1.5;
  std::optional<double> base;  // first edge; defaults to the smallest value
};

/// Geometric bins. Values must be positive and not below `base`; otherwise
/// ParameterError.
Histogram log_histogram(std::span<const double> values, LogBinning binning = {});

/// Unit-width bins [k, k+1) from `lowest` to the largest value.
Histogram linear_histogram(std::span<const std::int64_t> values, std::int64_t lowest);

/// Log-binned Δt^EI in minutes, optionally only for events of one size.
Histogram duration_distribution(const EventSet& events,
                                std::optional<std::size_t> size_filter = std::nullopt,
                                LogBinning binning = {});

/// Linear bins over event size, starting at 2.
Histogram size_distribution(const EventSet& events);

inline constexpr double kTwoCourseMinutes = 120.0;

/// Log-binned δ (minutes) with markers at 120 and 1440 minutes.
Histogram delta_distribution(std::span<const double> deltas, LogBinning binning = {});

/// Linear bins over floor(δ / 1440).
Histogram integral_day_distribution(std::span<const double> deltas);

/// Calendar day number of `t` in the local time zone.
std::int64_t local_day(Timestamp t, int tz_offset_minutes) noexcept;

/// δ of the edges whose source and sink begin on the same local day.
std::vector<double> natural_deseason(const TransmissionGraph& tg, int tz_offset_minutes);

struct ShuffleConfig {
  std::uint64_t seed = 0;
  std::size_t rounds = 1;

  /// 10 swap attempts per event.
  static ShuffleConfig for_events(const EventSet& events, std::uint64_t seed);
};

struct ShuffleReport {
  std::size_t attempted = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

struct ShuffleResult {
  EventSet events;
  ShuffleReport report;
};

/// Repeatedly swaps the begin times of two random events, keeping each
/// event's duration. A swap is undone when it would put a user in two events
/// with the same begin time. Deterministic for a given seed.
ShuffleResult artificial_deseason(const EventSet& events, const ShuffleConfig& config);

/// Population standard deviation over mean. ParameterError on empty input or
/// zero mean.
double degree_cv(std::span<const double> values);
double degree_cv(std::span<const std::size_t> values);

/// `bin_low,bin_high,count,probability`
void write_histogram_csv(std::ostream& out, const Histogram& hist);

}  // namespace tempnet
