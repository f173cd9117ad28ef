#include "tempnet/temporal_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>

#include "tempnet/errors.hpp"

namespace tempnet {
namespace {

void normalize(Histogram& h) {
  const double total = static_cast<double>(h.total());
  h.probabilities.assign(h.counts.size(), 0.0);
  if (total == 0.0) return;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    h.probabilities[k] = static_cast<double>(h.counts[k]) / total;
  }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::size_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Histogram log_histogram(std::span<const double> values, LogBinning binning) {
  if (!(binning.factor > 1.0)) throw ParameterError("log bin factor must exceed 1");
  Histogram h;
  h.binning = Binning::logarithmic;
  if (values.empty()) return h;

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double base = binning.base.value_or(*lo_it);
  if (!(base > 0.0)) throw ParameterError("log binning needs positive values");
  if (*lo_it < base) throw ParameterError("value below log bin base");

  h.edges.push_back(base);
  while (h.edges.back() <= *hi_it) h.edges.push_back(h.edges.back() * binning.factor);
  h.counts.assign(h.edges.size() - 1, 0);
  for (const double v : values) {
    const auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
    ++h.counts[static_cast<std::size_t>(it - h.edges.begin()) - 1];
  }
  normalize(h);
  return h;
}

Histogram linear_histogram(std::span<const std::int64_t> values, std::int64_t lowest) {
  Histogram h;
  h.binning = Binning::linear;
  if (values.empty()) return h;
  const auto highest = std::max(*std::max_element(values.begin(), values.end()), lowest);
  for (auto k = lowest; k <= highest + 1; ++k) h.edges.push_back(static_cast<double>(k));
  h.counts.assign(static_cast<std::size_t>(highest - lowest + 1), 0);
  for (const auto v : values) {
    if (v < lowest) throw ParameterError("value below linear histogram floor");
    ++h.counts[static_cast<std::size_t>(v - lowest)];
  }
  normalize(h);
  return h;
}

Histogram duration_distribution(const EventSet& events, std::optional<std::size_t> size_filter,
                                LogBinning binning) {
  std::vector<double> durations;
  for (const auto& e : events) {
    if (!size_filter || event_size(e) == *size_filter) durations.push_back(event_duration(e));
  }
  return log_histogram(durations, binning);
}

Histogram size_distribution(const EventSet& events) {
  std::vector<std::int64_t> sizes;
  sizes.reserve(events.size());
  for (const auto& e : events) sizes.push_back(static_cast<std::int64_t>(event_size(e)));
  return linear_histogram(sizes, 2);
}

Histogram delta_distribution(std::span<const double> deltas, LogBinning binning) {
  auto h = log_histogram(deltas, binning);
  h.markers = {kTwoCourseMinutes, kMinutesPerDay};
  return h;
}

Histogram integral_day_distribution(std::span<const double> deltas) {
  std::vector<std::int64_t> days;
  days.reserve(deltas.size());
  for (const double d : deltas) days.push_back(static_cast<std::int64_t>(std::floor(d / kMinutesPerDay)));
  return linear_histogram(days, 0);
}

std::int64_t local_day(Timestamp t, int tz_offset_minutes) noexcept {
  return floor_div(t + static_cast<Timestamp>(tz_offset_minutes) * kSecondsPerMinute, kSecondsPerDay);
}

std::vector<double> natural_deseason(const TransmissionGraph& tg, int tz_offset_minutes) {
  std::vector<double> kept;
  std::vector<const TransmissionEdge*> order;
  for (const auto& e : tg.edges) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return std::pair(a->t_sink, a->source) < std::pair(b->t_sink, b->source);
  });
  for (const auto* e : order) {
    if (local_day(e->t_source, tz_offset_minutes) == local_day(e->t_sink, tz_offset_minutes)) {
      kept.push_back(e->delta_minutes());
    }
  }
  return kept;
}

ShuffleConfig ShuffleConfig::for_events(const EventSet& events, std::uint64_t seed) {
  return {seed, std::max<std::size_t>(1, 10 * events.size())};
}

ShuffleResult artificial_deseason(const EventSet& events, const ShuffleConfig& config) {
  if (config.rounds < 1) throw ParameterError("shuffle rounds must be at least 1");
  std::vector<EventInteraction> shuffled = events.events();
  ShuffleReport report;

  struct KeyHash {
    std::size_t operator()(const std::pair<UserIndex, Timestamp>& k) const noexcept {
      return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(k.first) << 40) ^
                                        static_cast<std::uint64_t>(k.second));
    }
  };
  std::unordered_map<std::pair<UserIndex, Timestamp>, int, KeyHash> occupied;
  for (const auto& e : shuffled) {
    for (auto u : e.members) ++occupied[{u, e.t_begin}];
  }
  auto release = [&](const EventInteraction& e, Timestamp t) {
    for (auto u : e.members) {
      auto it = occupied.find({u, t});
      if (--it->second == 0) occupied.erase(it);
    }
  };
  auto claim = [&](const EventInteraction& e, Timestamp t) {
    for (auto u : e.members) ++occupied[{u, t}];
  };
  auto clashes = [&](const EventInteraction& e, Timestamp t) {
    return std::any_of(e.members.begin(), e.members.end(),
                       [&](UserIndex u) { return occupied.count({u, t}) > 0; });
  };

  const std::size_t n = shuffled.size();
  std::mt19937_64 rng(config.seed);
  if (n >= 2) {
    for (std::size_t round = 0; round < config.rounds; ++round) {
      ++report.attempted;
      const auto i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
      auto j = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
      if (j >= i) ++j;
      auto& a = shuffled[i];
      auto& b = shuffled[j];
      const Timestamp ta = a.t_begin, tb = b.t_begin;
      if (ta == tb) {
        ++report.accepted;
        continue;
      }
      release(a, ta);
      release(b, tb);
      if (clashes(a, tb) || clashes(b, ta)) {
        claim(a, ta);
        claim(b, tb);
        ++report.rejected;
        continue;
      }
      claim(a, tb);
      claim(b, ta);
      const Timestamp da = a.t_end - a.t_begin, db = b.t_end - b.t_begin;
      a.t_begin = tb;
      a.t_end = tb + da;
      b.t_begin = ta;
      b.t_end = ta + db;
      ++report.accepted;
    }
  }
  return {EventSet(events.users(), std::move(shuffled)), report};
}

double degree_cv(std::span<const double> values) {
  if (values.empty()) throw ParameterError("coefficient of variation of an empty sample");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (mean == 0.0) throw ParameterError("coefficient of variation with zero mean");
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n) / mean;
}

double degree_cv(std::span<const std::size_t> values) {
  std::vector<double> as_double(values.begin(), values.end());
  return degree_cv(std::span<const double>(as_double));
}

void write_histogram_csv(std::ostream& out, const Histogram& hist) {
  out << "bin_low,bin_high,count,probability\n";
  const auto old_precision = out.precision(17);
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    out << hist.edges[k] << ',' << hist.edges[k + 1] << ',' << hist.counts[k] << ','
        << hist.probabilities[k] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace tempnet
