#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "mrx/backbone.hpp"
#include "mrx/cnf_tweak.hpp"
#include "mrx/dimacs.hpp"
#include "mrx/hitting_set.hpp"
#include "mrx/minimal_sets.hpp"
#include "mrx/planning/explain.hpp"
#include "mrx/planning/pddl.hpp"
#include "mrx/planning/tweak.hpp"
#include "mrx/reconcile.hpp"

namespace {

using namespace mrx;

const std::string kData = MRX_BENCH_DATA_DIR;

CnfFormula planted_3sat(Var n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<char> planted(n + 1);
  for (Var v = 1; v <= n; ++v) planted[v] = static_cast<char>(rng() & 1);
  CnfFormula f(n);
  while (f.size() < m) {
    std::vector<Literal> lits;
    bool sat = false;
    for (int i = 0; i < 3; ++i) {
      const Var v = 1 + static_cast<Var>(rng() % n);
      const bool pos = (rng() & 1) != 0;
      sat |= (planted[v] != 0) == pos;
      lits.emplace_back(v, pos);
    }
    auto c = Clause::make(std::move(lits));
    if (sat && c) f.add(std::move(*c));
  }
  return f;
}

void BM_HittingSetRandom(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<ClauseIndexSet> sets;
  const auto universe = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < universe; ++i) {
    std::vector<std::size_t> ids;
    for (int j = 0; j < 3; ++j) ids.push_back(rng() % universe);
    sets.emplace_back(std::move(ids));
  }
  for (auto _ : state) benchmark::DoNotOptimize(min_hitting_set(sets));
}
BENCHMARK(BM_HittingSetRandom)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_MusExtraction(benchmark::State& state) {
  CnfFormula f = planted_3sat(60, 300, 2);
  std::vector<Clause> soft = f.clauses();
  soft.push_back(Clause::of({1}));
  soft.push_back(Clause::of({-1}));
  for (auto _ : state) benchmark::DoNotOptimize(extract_mus(soft, {}));
}
BENCHMARK(BM_MusExtraction)->Unit(benchmark::kMillisecond);

void BM_Backbone(benchmark::State& state) {
  const CnfFormula f = planted_3sat(static_cast<Var>(state.range(0)), 1000, 3);
  for (auto _ : state) benchmark::DoNotOptimize(compute_backbone(f));
}
BENCHMARK(BM_Backbone)->Arg(160)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ReconcileCnfScenario(benchmark::State& state) {
  const CnfFormula kb_a = planted_3sat(160, 1000, 8);
  const BackboneSample sample = sample_backbone(compute_backbone(kb_a), 5, 8);
  CnfFormula query;
  for (Literal l : sample.literals) query.add(*Clause::make({l}));
  const CnfTweak human = tweak_cnf(kb_a, static_cast<int>(state.range(0)), 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reconcile({kb_a, human.kb, query, ReconcileMode::general}, {nullptr, false}));
  }
}
BENCHMARK(BM_ReconcileCnfScenario)->DenseRange(9, 12)->Unit(benchmark::kMillisecond);

void BM_ExplainPlan(benchmark::State& state) {
  const planning::PlanningProblem p = planning::ground(
      planning::parse_pddl(read_text_file(kData + "/blocksworld/domain.pddl"),
                           read_text_file(kData + "/blocksworld/sussman.pddl")));
  const planning::Plan plan = planning::optimal_plan_search(p);
  const planning::TweakedModel human =
      planning::tweak_model(p, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(planning::explain_plan(p, human.problem, plan, {nullptr,
                                                    ReconcileMode::restricted, false}));
  }
}
BENCHMARK(BM_ExplainPlan)->DenseRange(1, 8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
