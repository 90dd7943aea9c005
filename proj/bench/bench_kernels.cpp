#include <benchmark/benchmark.h>

#include "tent/chain.hpp"
#include "tent/omega.hpp"

using namespace tent;

namespace {

const TentMap& golden() {
  static const TentMap G = TentMap::golden();
  return G;
}

void BM_ChainGraph(benchmark::State& state, bool parallel) {
  const double res = 1.0 / static_cast<double>(state.range(0));
  FiniteNet net = core_net(golden(), res);
  BigFloat delta(2.5 * res, kDefaultPrecision);
  for (auto _ : state) {
    auto g = parallel ? build_chain_graph(golden(), net, delta)
                      : build_chain_graph_serial(golden(), net, delta);
    benchmark::DoNotOptimize(g.edge_count());
  }
  state.counters["nodes"] = static_cast<double>(net.size());
}

void BM_WI(benchmark::State& state, bool parallel) {
  const double res = 1.0 / static_cast<double>(state.range(0));
  FiniteNet net = core_net(golden(), res);
  for (auto _ : state) {
    auto v = parallel ? weak_incompressibility_check(golden(), net, 48)
                      : weak_incompressibility_check_serial(golden(), net, 48);
    benchmark::DoNotOptimize(v.consistent);
  }
  state.counters["nodes"] = static_cast<double>(net.size());
}

void BM_Calibration(benchmark::State& state, bool parallel) {
  BigFloat eps(0.05, kDefaultPrecision);
  std::vector<double> grid{1e-12, 1e-3, 1e-2};
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto c = parallel ? calibrate_shadowing_modulus(golden(), eps, trials, grid)
                      : calibrate_shadowing_modulus_serial(golden(), eps, trials, grid);
    benchmark::DoNotOptimize(c.delta);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_ChainGraph, parallel, true)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_ChainGraph, serial, false)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_WI, parallel, true)->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_WI, serial, false)->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_Calibration, parallel, true)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Calibration, serial, false)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
