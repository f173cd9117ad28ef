#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tempnet/errors.hpp"
#include "tempnet/hub_prediction.hpp"
#include "tempnet/synth_gen.hpp"
#include "tempnet/transmission_graph.hpp"

using namespace tempnet;

namespace {

std::vector<UserScore> scores_of(const std::vector<std::size_t>& kappa, const std::vector<double>& mpap) {
  std::vector<UserScore> s;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    s.push_back({static_cast<UserIndex>(i), kappa[i], mpap[i], {}});
  }
  return s;
}

// Two groups meeting repeatedly with one-minute granularity: x (pairs,
// shorter meetings) and y (triples, longer meetings). y ranks above x both by
// κ and by MPAP at every α.
EventSet consistent_fixture() {
  constexpr Timestamp m = 60;
  return testkit::events_of({{"p", {"x1", "x2"}, 0, 1 * m},
                             {"p", {"x1", "x2"}, 100 * m, 102 * m},
                             {"q", {"y1", "y2", "y3"}, 0, 3 * m},
                             {"q", {"y1", "y2", "y3"}, 100 * m, 103 * m},
                             {"q", {"y1", "y2", "y3"}, 200 * m, 203 * m}});
}

EventSet scaled(const EventSet& ev, Timestamp c) {
  std::vector<EventInteraction> out = ev.events();
  for (auto& e : out) e.t_end = e.t_begin + c * (e.t_end - e.t_begin);
  return EventSet(ev.users(), out);
}

}  // namespace

TEST(TemporalDegree, MaxOverInvolvedEvents) {
  const auto ev = testkit::events_of({{"x", {"j", "a"}, 0, 5}, {"y", {"j", "b"}, 10, 15},
                                      {"z", {"j", "c"}, 20, 25}, {"w", {"d", "e"}, 30, 35}});
  AggregatedTransmissionGraph agg;
  agg.vertex_count = 4;
  agg.degree = {2, 7, 3, 4};
  const auto kappa = temporal_degree(agg, ev);
  EXPECT_EQ(kappa[*ev.find_user("j")], 7u);
  EXPECT_EQ(kappa[*ev.find_user("d")], 4u);
  EXPECT_EQ(kappa[*ev.find_user("a")], 2u);

  agg.vertex_count = 3;
  EXPECT_THROW(temporal_degree(agg, ev), InvariantError);
}

TEST(TemporalDegree, FiveEventFixtureByRecount) {
  const auto ev = testkit::five_event_events();
  const auto tg = build_tg(ev);
  std::vector<std::size_t> per_event(ev.size(), 0);
  for (const auto& e : tg.edges) {
    ++per_event[e.source];
    ++per_event[e.sink];
  }
  const auto kappa = temporal_degree(aggregate_tg(tg), ev);
  for (UserIndex u = 0; u < ev.population(); ++u) {
    std::size_t best = 0;
    for (const auto& e : ev) {
      if (e.contains(u)) best = std::max(best, per_event[e.id]);
    }
    EXPECT_EQ(kappa[u], best) << ev.user_name(u);
  }
  EXPECT_EQ(kappa[*ev.find_user("A")], 4u);
  EXPECT_EQ(kappa[*ev.find_user("E")], 2u);
}

TEST(TemporalDegree, UsersWithoutEventsGetZero) {
  const auto ev = testkit::events_of({{"x", {"a", "b"}, 0, 5}}, {"loner"});
  const auto kappa = temporal_degree(aggregate_tg(build_tg(ev)), ev);
  EXPECT_EQ(kappa[*ev.find_user("loner")], 0u);
}

TEST(Pap, BoundaryExponents) {
  const auto ev = testkit::events_of({{"x", {"a", "b", "c", "d"}, 0, 1500}});
  EXPECT_EQ(pap(ev[0], 0.0), 4.0);
  EXPECT_EQ(pap(ev[0], 1.0), 100.0);
  EXPECT_DOUBLE_EQ(pap(ev[0], 0.5), 20.0);
  EXPECT_THROW(pap(ev[0], -0.01), ParameterError);
  EXPECT_THROW(pap(ev[0], 1.01), ParameterError);
}

TEST(Mpap, MaximumOverInvolvedEvents) {
  // At α = 1, PAP is n times the duration in minutes: 2·1.6 and 2·2.55.
  const auto ev = testkit::events_of({{"x", {"j", "a"}, 0, 96}, {"y", {"j", "b"}, 200, 353}}, {"k"});
  EXPECT_DOUBLE_EQ(mpap(*ev.find_user("j"), ev, 1.0), 5.1);
  EXPECT_DOUBLE_EQ(mpap(*ev.find_user("a"), ev, 1.0), 3.2);
  EXPECT_EQ(mpap(*ev.find_user("k"), ev, 1.0), 0.0);
}

TEST(Mpap, IndependentOfTransmissionGraph) {
  const auto ev = testkit::five_event_events();
  const auto before = mpap_all(ev, 0.3);
  const auto agg = aggregate_tg(build_tg(ev));
  (void)temporal_degree(agg, ev);
  EXPECT_EQ(mpap_all(ev, 0.3), before);
}

TEST(AccuracyRate, ReversedOrderingsByPartition) {
  const std::vector<std::size_t> kappa{3, 2, 1};
  const std::vector<double> score{1, 2, 3};
  const auto s = scores_of(kappa, score);
  for (std::size_t v = 0; v < 3; ++v) {
    EXPECT_DOUBLE_EQ(accuracy_rate(s, v), testkit::partition_ar(kappa, score, v));
    EXPECT_DOUBLE_EQ(accuracy_rate(s, v), 0.0);
  }
}

TEST(AccuracyRate, ConsistentRankingsScoreOne) {
  const auto s = scores_of({5, 5, 3, 1}, {9.0, 9.0, 4.0, 0.5});
  for (double ar : accuracy_rates(s)) EXPECT_EQ(ar, 1.0);
}

TEST(AccuracyRate, NeedsTwoUsers) {
  const auto s = scores_of({1}, {1.0});
  EXPECT_THROW(accuracy_rate(s, 0), ParameterError);
  EXPECT_THROW(accuracy_rates(s), ParameterError);
}

TEST(AccuracyRate, NearEqualMpapValuesTie) {
  const double x = 0.1 + 0.2;
  const auto s = scores_of({2, 2}, {x, 0.3});
  EXPECT_EQ(accuracy_rate(s, 0), 1.0);
  EXPECT_EQ(mpap_classes(std::vector<double>{x, 0.3, 0.5}), (std::vector<std::size_t>{0, 0, 1}));
}

TEST(AccuracyByRank, MeanAndPopulationSd) {
  const auto s = scores_of({4, 2, 2}, {0, 0, 0});
  const std::vector<double> ars{0.25, 1.0, 0.0};
  const auto r = accuracy_by_rank(s, ars);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].rank, 1u);
  EXPECT_EQ(r[0].kappa, 4u);
  EXPECT_DOUBLE_EQ(r[0].mean_ar, 0.25);
  EXPECT_DOUBLE_EQ(r[0].std_ar, 0.0);
  EXPECT_EQ(r[1].users, 2u);
  EXPECT_DOUBLE_EQ(r[1].mean_ar, 0.5);
  EXPECT_DOUBLE_EQ(r[1].std_ar, 0.5);
}

TEST(WeightedAccuracy, DistinctDegreeWeights) {
  const auto s = scores_of({4, 2, 2}, {0, 0, 0});
  const std::vector<double> ars{1.0, 1.0, 0.0};
  EXPECT_DOUBLE_EQ(weighted_accuracy(s, ars), 5.0 / 6.0);

  const auto zero = scores_of({0, 0}, {1, 2});
  const std::vector<double> z{1.0, 1.0};
  EXPECT_THROW(weighted_accuracy(zero, z), ParameterError);
}

TEST(AlphaGrid, HundredAndOnePoints) {
  const auto g = alpha_grid(0.01);
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_THROW(alpha_grid(0.0), ParameterError);
  EXPECT_THROW(alpha_grid(1.0), ParameterError);
}

TEST(OptimizeAlpha, PerfectConsistencyPicksZero) {
  const auto ev = consistent_fixture();
  const auto agg = aggregate_tg(build_tg(ev));
  const auto search = optimize_alpha(ev, agg, 0.01);
  EXPECT_EQ(search.alpha_star, 0.0);
  EXPECT_EQ(search.f_star, 1.0);
  ASSERT_EQ(search.curve.size(), 101u);
  for (const auto& p : search.curve) EXPECT_EQ(p.f, 1.0);
}

TEST(RankUsers, ReportFields) {
  const auto ev = consistent_fixture();
  const auto agg = aggregate_tg(build_tg(ev));
  const auto r = rank_users(ev, agg, {-1, 1'000'000}, 0.5);
  EXPECT_EQ(r.scores.size(), 5u);
  EXPECT_EQ(r.ar.size(), 5u);
  EXPECT_EQ(r.f, 1.0);
  EXPECT_FALSE(r.search.has_value());
  ASSERT_EQ(r.by_rank.size(), 2u);
  EXPECT_EQ(r.by_rank[0].kappa, 2u);
  EXPECT_EQ(r.by_rank[0].users, 3u);

  const auto opt = rank_users(ev, agg, {-1, 1'000'000}, 0.5, 0.1);
  ASSERT_TRUE(opt.search.has_value());
  EXPECT_EQ(opt.alpha, opt.search->alpha_star);
  EXPECT_EQ(opt.search->curve.size(), 11u);
}

// ---------------------------------------------------------------- properties

TEST(AccuracyProperty, FastPathMatchesPartitionOracle) {
  std::mt19937_64 rng(401);
  std::uniform_int_distribution<std::size_t> n_of(2, 25), k_of(0, 5);
  std::uniform_int_distribution<int> s_of(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = n_of(rng);
    std::vector<std::size_t> kappa(n);
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) {
      kappa[i] = k_of(rng);
      score[i] = 0.5 * s_of(rng);
    }
    const auto s = scores_of(kappa, score);
    const auto fast = accuracy_rates(s);
    for (std::size_t v = 0; v < n; ++v) {
      const double expected = testkit::partition_ar(kappa, score, v);
      ASSERT_DOUBLE_EQ(fast[v], expected);
      ASSERT_DOUBLE_EQ(accuracy_rate(s, v), expected);
      ASSERT_GE(fast[v], 0.0);
      ASSERT_LE(fast[v], 1.0);
    }
  }
}

TEST(AccuracyProperty, MonotoneTransformOfScoresKeepsAr) {
  std::mt19937_64 rng(402);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<std::size_t> k_of(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> kappa(12);
    std::vector<double> score(12), transformed(12);
    for (std::size_t i = 0; i < 12; ++i) {
      kappa[i] = k_of(rng);
      score[i] = std::round(u(rng));
      transformed[i] = std::exp(score[i]) + 3.0;
    }
    ASSERT_EQ(accuracy_rates(scores_of(kappa, score)), accuracy_rates(scores_of(kappa, transformed)));
  }
}

TEST(AccuracyProperty, DurationScalingKeepsArAndF) {
  std::mt19937_64 rng(403);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ev = testkit::random_events(rng);
    const auto agg = aggregate_tg(build_tg(ev));
    const auto kappa = temporal_degree(agg, ev);
    if (std::all_of(kappa.begin(), kappa.end(), [](auto k) { return k == 0; })) continue;
    const auto ev3 = scaled(ev, 3);
    const auto agg3 = aggregate_tg(build_tg(ev3));
    for (double alpha : {0.0, 0.04, 0.37, 0.5, 1.0}) {
      const auto a = score_users(ev, kappa, alpha);
      const auto b = score_users(ev3, temporal_degree(agg3, ev3), alpha);
      if (a.size() < 2) continue;
      const auto ar_a = accuracy_rates(a);
      const auto ar_b = accuracy_rates(b);
      ASSERT_EQ(ar_a, ar_b);
      ASSERT_EQ(weighted_accuracy(a, ar_a), weighted_accuracy(b, ar_b));
    }
  }
}

TEST(MpapProperty, AddingAnEventNeverLowersMpap) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ev = testkit::random_events(rng);
    if (ev.population() < 2) continue;
    auto more = ev.events();
    more.push_back({0, "extra", {0, 1}, 1000, 1003});
    const EventSet bigger(ev.users(), more);
    for (double alpha : {0.0, 0.5, 1.0}) {
      const auto before = mpap_all(ev, alpha);
      const auto after = mpap_all(bigger, alpha);
      for (std::size_t u = 0; u < before.size(); ++u) ASSERT_GE(after[u], before[u]);
    }
  }
}

TEST(WeightedAccuracyProperty, OneExactlyWhenEveryArIsOne) {
  std::mt19937_64 rng(405);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ev = testkit::random_events(rng);
    const auto agg = aggregate_tg(build_tg(ev));
    const auto kappa = temporal_degree(agg, ev);
    const auto s = score_users(ev, kappa, 0.5);
    if (s.size() < 2) continue;
    if (std::all_of(s.begin(), s.end(), [](auto& x) { return x.kappa == 0; })) continue;
    const auto ar = accuracy_rates(s);
    const double f = weighted_accuracy(s, ar);
    bool all_one = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].kappa > 0 && ar[i] != 1.0) all_one = false;
    }
    ASSERT_EQ(f == 1.0, all_one);
    ASSERT_GE(f, 0.0);
    ASSERT_LE(f, 1.0);
  }
}

TEST(OptimizeAlphaProperty, ArgmaxAndDeterminismOnSyntheticCampus) {
  GeneratorConfig cfg;
  cfg.n_users = 80;
  cfg.n_weeks = 2;
  const auto ev = extract_events(generate(cfg));
  const auto agg = aggregate_tg(build_tg(ev));
  const auto a = optimize_alpha(ev, agg, 0.01);
  const auto b = optimize_alpha(ev, agg, 0.01);
  EXPECT_EQ(a.alpha_star, b.alpha_star);
  EXPECT_EQ(a.curve.size(), 101u);
  for (const auto& p : a.curve) {
    EXPECT_GE(a.f_star, p.f);
    if (p.alpha < a.alpha_star) EXPECT_LT(p.f, a.f_star);
  }
}
