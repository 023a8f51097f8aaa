#include <benchmark/benchmark.h>

#include "ginv/conditions.hpp"
#include "ginv/oracle.hpp"

namespace {

// Assembled 2n x 2n matrices from the generator, so the index is nontrivial.
ginv::Matrix assembled(ginv::FormulaId id, std::size_t n, std::uint64_t seed) {
  return ginv::assemble(ginv::generate({id, n, seed, ""}));
}

void BM_Drazin(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ginv::Matrix m = assembled(ginv::FormulaId::thm25, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ginv::drazin(m));
  state.SetLabel("2n=" + std::to_string(2 * n));
}
BENCHMARK(BM_Drazin)->DenseRange(1, 4);

void BM_IndexOf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ginv::Matrix m = assembled(ginv::FormulaId::thm23, n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(ginv::index_of(m));
}
BENCHMARK(BM_IndexOf)->DenseRange(1, 4);

void BM_RankFactorize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ginv::Matrix m = assembled(ginv::FormulaId::thm41, n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(ginv::rank_factorize(m));
}
BENCHMARK(BM_RankFactorize)->DenseRange(1, 4);

void BM_Generate(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ginv::generate({ginv::FormulaId::thm41, 3, seed++, ""}));
  }
}
BENCHMARK(BM_Generate);

}  // namespace
