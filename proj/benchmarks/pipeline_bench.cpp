#include <benchmark/benchmark.h>

#include <map>

#include "tempnet/event_extraction.hpp"
#include "tempnet/synth_gen.hpp"
#include "tempnet/temporal_contact.hpp"
#include "tempnet/transmission_graph.hpp"

namespace {

using namespace tempnet;

// Campus scaled with the user count: one access point per 20 users.
const SessionSet& campus(std::size_t users) {
  static std::map<std::size_t, SessionSet> cache;
  auto it = cache.find(users);
  if (it == cache.end()) {
    GeneratorConfig cfg;
    cfg.n_users = users;
    cfg.n_aps = users / 20;
    it = cache.emplace(users, generate(cfg)).first;
  }
  return it->second;
}

const EventSet& campus_events(std::size_t users) {
  static std::map<std::size_t, EventSet> cache;
  auto it = cache.find(users);
  if (it == cache.end()) it = cache.emplace(users, extract_events(campus(users))).first;
  return it->second;
}

void BM_ExtractEvents(benchmark::State& state) {
  const auto& sessions = campus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_events(sessions));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * sessions.sessions.size()));
}
BENCHMARK(BM_ExtractEvents)->Arg(200)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_BuildTransmissionGraph(benchmark::State& state) {
  const auto& events = campus_events(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_tg(events));
  }
  state.SetComplexityN(static_cast<std::int64_t>(events.size()));
  state.counters["events"] = static_cast<double>(events.size());
}
BENCHMARK(BM_BuildTransmissionGraph)
    ->Arg(200)
    ->Arg(2000)
    ->Arg(20000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNLogN);

void BM_BuildTcnOneDay(benchmark::State& state) {
  const auto& events = campus_events(static_cast<std::size_t>(state.range(0)));
  const Timestamp first = events.events().front().t_begin;
  const Window day{first - 1, first - 1 + kSecondsPerDay};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_tcn(events, day));
  }
}
BENCHMARK(BM_BuildTcnOneDay)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
