#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "teamdiv/diversity.hpp"
#include "teamdiv/report.hpp"
#include "teamdiv/synth.hpp"

namespace {

using namespace teamdiv;

ExpertiseVector random_vector(std::mt19937_64& gen, std::uint32_t owner, int k) {
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::vector<std::uint32_t> topics(200);
  for (std::uint32_t t = 0; t < 200; ++t) topics[t] = t;
  std::shuffle(topics.begin(), topics.end(), gen);
  std::vector<WeightedTopic> e;
  for (int i = 0; i < k; ++i) e.push_back({TopicId{topics[i]}, w(gen)});
  return ExpertiseVector(AuthorId{owner}, k, std::move(e));
}

void BM_CosineDistance(benchmark::State& state) {
  std::mt19937_64 gen(1);
  const auto u = random_vector(gen, 0, static_cast<int>(state.range(0)));
  const auto v = random_vector(gen, 1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cosine_distance(u, v));
}
BENCHMARK(BM_CosineDistance)->Arg(5)->Arg(10)->Arg(20);

void BM_AssessTeam(benchmark::State& state) {
  std::mt19937_64 gen(2);
  std::vector<ExpertiseVector> team;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    team.push_back(random_vector(gen, static_cast<std::uint32_t>(i), 10));
  }
  for (auto _ : state) benchmark::DoNotOptimize(assess_team("p", team, 0.3));
}
BENCHMARK(BM_AssessTeam)->Arg(2)->Arg(7)->Arg(12)->Arg(40);

void BM_ConnectedComponents(benchmark::State& state) {
  std::mt19937_64 gen(3);
  AuthorSimilarityGraph g;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < n; ++i) g.vertices.push_back(AuthorId{static_cast<std::uint32_t>(i)});
  std::bernoulli_distribution edge(0.2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(gen)) g.edges.emplace_back(i, j);
  for (auto _ : state) benchmark::DoNotOptimize(connected_components(g));
}
BENCHMARK(BM_ConnectedComponents)->Arg(12)->Arg(100);

void BM_RunAnalysis(benchmark::State& state) {
  SynthParams params;
  params.n_papers = static_cast<std::size_t>(state.range(0));
  params.n_authors = params.n_papers * 7 / 2;
  params.coupling = 0.8;
  const auto corpus = generate_corpus(params);
  const RunOptions options{static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(run_analysis(corpus, AnalysisConfig{}, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunAnalysis)->Args({5000, 1})->Args({20000, 1})->Args({20000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_GenerateCorpus(benchmark::State& state) {
  SynthParams params;
  params.n_papers = static_cast<std::size_t>(state.range(0));
  params.n_authors = params.n_papers * 7 / 2;
  for (auto _ : state) benchmark::DoNotOptimize(generate_corpus(params));
}
BENCHMARK(BM_GenerateCorpus)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
