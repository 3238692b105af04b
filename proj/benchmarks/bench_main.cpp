#include <benchmark/benchmark.h>

#include <random>

#include "eocos/montage.hpp"
#include "eocos/nl2.hpp"
#include "eocos/report_io.hpp"
#include "support/generators.hpp"

namespace {

using namespace eocos;

// Units spread over many subjects, so opposition pairs stay sparse.
Structure sized_structure(int units, int relations) {
  std::mt19937_64 rng(17);
  testing::GenParams p;
  p.min_units = p.max_units = units;
  p.max_relations = relations;
  p.subjects = std::max(1, units / 5);
  p.item_pool = 12;
  return testing::random_structure(rng, p);
}

void BM_MontageRound(benchmark::State& state) {
  const Structure s = sized_structure(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) * 2);
  const auto points = build_action_points(s);
  const MontageConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(montage_round(s, points, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size()));
}
BENCHMARK(BM_MontageRound)->RangeMultiplier(10)->Range(100, 10'000)->Unit(benchmark::kMillisecond);

void BM_BuildActionPoints(benchmark::State& state) {
  const Structure s = sized_structure(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) * 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_action_points(s));
}
BENCHMARK(BM_BuildActionPoints)->RangeMultiplier(10)->Range(100, 10'000)->Unit(benchmark::kMillisecond);

void BM_RunEosToJson(benchmark::State& state) {
  const Structure s = sized_structure(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) * 2);
  const MontageConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(report_to_json(run_eos(s, cfg)));
}
BENCHMARK(BM_RunEosToJson)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_ParseScenario(benchmark::State& state) {
  ScenarioDoc doc;
  doc.name = "bench";
  doc.allow_cross_subject_resemblance = true;
  doc.structure = sized_structure(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) * 2);
  const std::string text = serialize_scenario(doc);
  for (auto _ : state) benchmark::DoNotOptimize(parse_scenario(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseScenario)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
