#include "tempnet/hub_prediction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "tempnet/errors.hpp"

namespace tempnet {
namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in [0, 1]");
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Count of inserted positions < i.
  [[nodiscard]] std::size_t prefix(std::size_t i) const {
    std::size_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::size_t> tree_;
};

}  // namespace

std::vector<std::size_t> temporal_degree(const AggregatedTransmissionGraph& agg,
                                         const EventSet& events) {
  if (agg.vertex_count != events.size()) {
    throw_invariant("aggregated graph was not built from this event set");
  }
  std::vector<std::size_t> kappa(events.population(), 0);
  for (const auto& e : events) {
    for (auto u : e.members) kappa[u] = std::max(kappa[u], agg.degree[e.id]);
  }
  return kappa;
}

double pap(const EventInteraction& e, double alpha) {
  check_alpha(alpha);
  const double n = static_cast<double>(event_size(e));
  const double duration_sum = n * event_duration(e);
  return std::pow(duration_sum, alpha) * std::pow(n, 1.0 - alpha);
}

double mpap(UserIndex user, const EventSet& events, double alpha) {
  check_alpha(alpha);
  double best = 0.0;
  for (const auto& e : events) {
    if (e.contains(user)) best = std::max(best, pap(e, alpha));
  }
  return best;
}

std::vector<double> mpap_all(const EventSet& events, double alpha) {
  check_alpha(alpha);
  std::vector<double> best(events.population(), 0.0);
  for (const auto& e : events) {
    const double p = pap(e, alpha);
    for (auto u : e.members) best[u] = std::max(best[u], p);
  }
  return best;
}

std::vector<UserScore> score_users(const EventSet& events, std::span<const std::size_t> kappa,
                                   double alpha) {
  const auto gamma = events.events_by_user();
  const auto best = mpap_all(events, alpha);
  std::vector<UserScore> scores;
  for (std::size_t u = 0; u < gamma.size(); ++u) {
    if (gamma[u].empty()) continue;
    scores.push_back({static_cast<UserIndex>(u), kappa[u], best[u], gamma[u]});
  }
  return scores;
}

std::vector<std::size_t> mpap_classes(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::size_t> cls(values.size(), 0);
  std::size_t current = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0) {
      const double prev = values[order[k - 1]];
      const double here = values[order[k]];
      if (here - prev > kMpapRelativeTolerance * std::max(std::abs(prev), std::abs(here))) ++current;
    }
    cls[order[k]] = current;
  }
  return cls;
}

namespace {

std::vector<std::size_t> classes_of(std::span<const UserScore> scores) {
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.mpap);
  return mpap_classes(values);
}

}  // namespace

double accuracy_rate(std::span<const UserScore> scores, std::size_t position) {
  if (scores.size() < 2) throw ParameterError("accuracy rate needs at least two users");
  const auto cls = classes_of(scores);
  const auto kv = scores[position].kappa;
  const auto cv = cls[position];
  std::size_t agree = 0;
  for (std::size_t w = 0; w < scores.size(); ++w) {
    if (w == position) continue;
    const auto kw = scores[w].kappa;
    const auto cw = cls[w];
    if ((kw > kv && cw > cv) || (kw == kv && cw == cv) || (kw < kv && cw < cv)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(scores.size() - 1);
}

std::vector<double> accuracy_rates(std::span<const UserScore> scores) {
  const std::size_t n = scores.size();
  if (n < 2) throw ParameterError("accuracy rate needs at least two users");
  const auto cls = classes_of(scores);
  const std::size_t n_classes = *std::max_element(cls.begin(), cls.end()) + 1;

  std::vector<std::size_t> agree(n, 0);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> same;
  for (std::size_t i = 0; i < n; ++i) ++same[{scores[i].kappa, cls[i]}];
  for (std::size_t i = 0; i < n; ++i) agree[i] += same[{scores[i].kappa, cls[i]}] - 1;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a].kappa < scores[b].kappa; });

  // Strictly smaller κ and class: sweep κ ascending.
  {
    Fenwick fw(n_classes);
    for (std::size_t lo = 0; lo < n;) {
      std::size_t hi = lo;
      while (hi < n && scores[order[hi]].kappa == scores[order[lo]].kappa) ++hi;
      for (std::size_t k = lo; k < hi; ++k) agree[order[k]] += fw.prefix(cls[order[k]]);
      for (std::size_t k = lo; k < hi; ++k) fw.add(cls[order[k]]);
      lo = hi;
    }
  }
  // Strictly larger κ and class: sweep κ descending.
  {
    Fenwick fw(n_classes);
    std::size_t inserted = 0;
    for (std::size_t hi = n; hi > 0;) {
      std::size_t lo = hi;
      while (lo > 0 && scores[order[lo - 1]].kappa == scores[order[hi - 1]].kappa) --lo;
      for (std::size_t k = lo; k < hi; ++k) {
        agree[order[k]] += inserted - fw.prefix(cls[order[k]] + 1);
      }
      for (std::size_t k = lo; k < hi; ++k) {
        fw.add(cls[order[k]]);
        ++inserted;
      }
      hi = lo;
    }
  }

  std::vector<double> ar(n);
  for (std::size_t i = 0; i < n; ++i) {
    ar[i] = static_cast<double>(agree[i]) / static_cast<double>(n - 1);
  }
  return ar;
}

std::vector<RankAccuracy> accuracy_by_rank(std::span<const UserScore> scores,
                                           std::span<const double> ars) {
  std::map<std::size_t, std::vector<double>, std::greater<>> by_kappa;
  for (std::size_t i = 0; i < scores.size(); ++i) by_kappa[scores[i].kappa].push_back(ars[i]);

  std::vector<RankAccuracy> out;
  std::size_t rank = 0;
  for (const auto& [kappa, values] : by_kappa) {
    RankAccuracy r;
    r.rank = ++rank;
    r.kappa = kappa;
    r.users = values.size();
    const double n = static_cast<double>(values.size());
    r.mean_ar = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (const double v : values) ss += (v - r.mean_ar) * (v - r.mean_ar);
    r.std_ar = std::sqrt(ss / n);
    out.push_back(r);
  }
  return out;
}

double weighted_accuracy(std::span<const UserScore> scores, std::span<const double> ars) {
  double num = 0.0, den = 0.0;
  for (const auto& r : accuracy_by_rank(scores, ars)) {
    num += static_cast<double>(r.kappa) * r.mean_ar;
    den += static_cast<double>(r.kappa);
  }
  if (den == 0.0) throw ParameterError("weighted accuracy undefined when every kappa is 0");
  return num / den;
}

std::vector<double> alpha_grid(double step) {
  if (!(step > 0.0 && step < 1.0)) throw ParameterError("grid step must lie in (0, 1)");
  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) {
    grid.push_back(std::min(1.0, static_cast<double>(k) * step));
  }
  if (grid.back() < 1.0 - 1e-12) grid.push_back(1.0);
  grid.back() = std::min(grid.back(), 1.0);
  return grid;
}

AlphaSearch optimize_alpha(const EventSet& events, const AggregatedTransmissionGraph& agg,
                           double grid_step) {
  const auto grid = alpha_grid(grid_step);
  const auto kappa = temporal_degree(agg, events);
  AlphaSearch search;
  bool first = true;
  for (const double alpha : grid) {
    const auto scores = score_users(events, kappa, alpha);
    const double f = weighted_accuracy(scores, accuracy_rates(scores));
    search.curve.push_back({alpha, f});
    if (first || f > search.f_star) {
      search.alpha_star = alpha;
      search.f_star = f;
      first = false;
    }
  }
  return search;
}

RankingReport rank_users(const EventSet& events, const AggregatedTransmissionGraph& agg,
                         Window window, double alpha, std::optional<double> grid_step) {
  RankingReport report;
  report.window = window;
  if (grid_step) {
    report.search = optimize_alpha(events, agg, *grid_step);
    alpha = report.search->alpha_star;
  }
  report.alpha = alpha;
  const auto kappa = temporal_degree(agg, events);
  report.scores = score_users(events, kappa, alpha);
  report.ar = accuracy_rates(report.scores);
  report.by_rank = accuracy_by_rank(report.scores, report.ar);
  report.f = weighted_accuracy(report.scores, report.ar);
  return report;
}

}  // namespace tempnet
