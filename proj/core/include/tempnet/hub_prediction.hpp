#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tempnet/event_extraction.hpp"
#include "tempnet/transmission_graph.hpp"

namespace tempnet {

struct UserScore {
  UserIndex user = 0;
  std::size_t kappa = 0;              // temporal degree
  double mpap = 0.0;
  std::vector<EventId> involved_events;  // Γ(j)
};

/// κ(j): the largest raw in+out transmission degree over the events user j
/// takes part in; 0 for users in no event. Indexed by dictionary user.
std::vector<std::size_t> temporal_degree(const AggregatedTransmissionGraph& agg,
                                         const EventSet& events);

/// Participation activity potential (n·Δt)^α · n^(1-α), with Δt in minutes.
/// ParameterError unless 0 <= alpha <= 1.
double pap(const EventInteraction& e, double alpha);

/// Largest PAP over the user's events, 0 when the user has none. Needs only
/// the events, never the transmission graph.
double mpap(UserIndex user, const EventSet& events, double alpha);
std::vector<double> mpap_all(const EventSet& events, double alpha);

/// One score per user that takes part in at least one event, ascending by user.
std::vector<UserScore> score_users(const EventSet& events, std::span<const std::size_t> kappa,
                                   double alpha);

/// MPAP values closer than this relative distance are treated as equal.
inline constexpr double kMpapRelativeTolerance = 1e-12;

/// Dense value classes of `values` (0 = smallest), merging near-equal values.
std::vector<std::size_t> mpap_classes(std::span<const double> values);

/// AR of scores[position]: share of the other users placed on the same side
/// (above, level, below) by κ and by MPAP. ParameterError with fewer than 2 users.
double accuracy_rate(std::span<const UserScore> scores, std::size_t position);

/// AR for every score, O(n log n).
std::vector<double> accuracy_rates(std::span<const UserScore> scores);

struct RankAccuracy {
  std::size_t rank = 0;   // 1 = largest κ; users with equal κ share a rank
  std::size_t kappa = 0;
  std::size_t users = 0;
  double mean_ar = 0.0;
  double std_ar = 0.0;    // population standard deviation
};

std::vector<RankAccuracy> accuracy_by_rank(std::span<const UserScore> scores,
                                           std::span<const double> ars);

/// F = Σ κ·<AR(κ)> / Σ κ over the distinct κ values present.
/// ParameterError when every κ is 0.
double weighted_accuracy(std::span<const UserScore> scores, std::span<const double> ars);

struct AlphaPoint {
  double alpha = 0.0;
  double f = 0.0;
};

struct AlphaSearch {
  double alpha_star = 0.0;
  double f_star = 0.0;
  std::vector<AlphaPoint> curve;
};

/// {0, step, 2·step, ..., 1}; ParameterError unless 0 < step < 1.
std::vector<double> alpha_grid(double step);

/// Evaluates F over alpha_grid(step); ties go to the smallest α.
AlphaSearch optimize_alpha(const EventSet& events, const AggregatedTransmissionGraph& agg,
                           double grid_step);

struct RankingReport {
  Window window;  // ΔT
  double alpha = 0.0;
  std::vector<UserScore> scores;
  std::vector<double> ar;
  std::vector<RankAccuracy> by_rank;
  double f = 0.0;
  std::optional<AlphaSearch> search;
};

/// Scores and accuracies at `alpha`, plus the α search when a grid step is
/// given (then `alpha` is replaced by the optimum).
RankingReport rank_users(const EventSet& events, const AggregatedTransmissionGraph& agg,
                         Window window, double alpha,
                         std::optional<double> grid_step = std::nullopt);

}  // namespace tempnet
