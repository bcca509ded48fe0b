#include <benchmark/benchmark.h>

#include "natlog/explain.hpp"
#include "natlog/oracle.hpp"
#include "natlog/proof.hpp"
#include "natlog/regression.hpp"
#include "natlog/runner.hpp"

using namespace natlog;

namespace {

const NLIProblem kManyFew{"many-few", {"many birds hover high"}, "few birds fly", std::nullopt};
const NLIProblem kDrugs{
    "drugs",
    {"The drugs that slow down or halt Alzheimer's disease work best the earlier you administer them"},
    "Alzheimer's disease is treated using drugs",
    std::nullopt};

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_problem(kDrugs));
}
BENCHMARK(BM_Parse);

void BM_ClassifyManyFew(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify(kManyFew, KnowledgeBase::builtin(), Budget{}));
}
BENCHMARK(BM_ClassifyManyFew);

void BM_ClassifyDrugs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify(kDrugs, KnowledgeBase::builtin(), Budget{}));
}
BENCHMARK(BM_ClassifyDrugs);

void BM_ExplainFull(benchmark::State& state) {
  auto r = classify(kDrugs, KnowledgeBase::builtin(), Budget{});
  auto p = make_proof(*r.proof, "drugs", "entailment");
  for (auto _ : state) benchmark::DoNotOptimize(extract_full(p));
}
BENCHMARK(BM_ExplainFull);

void BM_Oracle(benchmark::State& state) {
  auto p = parse_problem(kManyFew);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        countermodel_search(p, Label::Contradiction, KnowledgeBase::builtin(), static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Oracle)->DenseRange(1, 3);

void BM_GeneratedCorpus(benchmark::State& state) {
  ProblemGenerator gen(7);
  auto corpus = gen.problems(200);
  RunConfig config;
  config.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_corpus(corpus, KnowledgeBase::builtin(), config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_GeneratedCorpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
