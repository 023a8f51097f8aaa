#include <benchmark/benchmark.h>

#include "ginv/oracle.hpp"

namespace {

// Closed form against the direct inverse of the assembled matrix, per formula.
void BM_Formula(benchmark::State& state, ginv::FormulaId id) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ginv::BlockPair pair = ginv::generate({id, n, 7, ""});
  for (auto _ : state) benchmark::DoNotOptimize(ginv::evaluate(id, pair));
}

void BM_Oracle(benchmark::State& state, ginv::FormulaId id) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ginv::BlockPair pair = ginv::generate({id, n, 7, ""});
  const auto kind = ginv::is_group_formula(id) ? ginv::InverseKind::Group : ginv::InverseKind::Drazin;
  for (auto _ : state) benchmark::DoNotOptimize(ginv::oracle_inverse(pair, kind));
}

void BM_Example45(benchmark::State& state) {
  const ginv::BlockPair pair = ginv::example_45();
  for (auto _ : state) benchmark::DoNotOptimize(ginv::group_ef_f0(pair.e, pair.f));
}
BENCHMARK(BM_Example45);

int register_all() {
  for (ginv::FormulaId id : ginv::kAllFormulas) {
    const std::string name(ginv::to_string(id));
    benchmark::RegisterBenchmark(("BM_Formula/" + name).c_str(), BM_Formula, id)->DenseRange(1, 4);
    benchmark::RegisterBenchmark(("BM_Oracle/" + name).c_str(), BM_Oracle, id)->DenseRange(1, 4);
  }
  return 0;
}
const int registered = register_all();

}  // namespace
