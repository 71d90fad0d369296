#include <benchmark/benchmark.h>

#include <vector>

#include "edgecode/bounds.hpp"
#include "edgecode/fountain.hpp"
#include "edgecode/runtime.hpp"

using namespace edgecode;

namespace {

SystemParams desk(std::int64_t k) {
    SystemParams p;
    p.e = 5;
    p.u = 10;
    p.k = k;
    p.r = k;
    p.mu = Rational(3, 5);
    p.beta = 0.03;
    p.nu = 1e8;
    p.f_cpu = 2.7e9;
    p.n_e = 50;
    p.n_u = 2;
    p.q = 2;
    return p;
}

void BM_InactivationDecode(benchmark::State& state) {
    const auto k = static_cast<std::int64_t>(state.range(0));
    const DegreeDistribution dist = robust_soliton(k, std::max<std::int64_t>(2, k / 48), 1e-2);
    const RowSampler sampler(dist);
    Rng rng(1);
    std::vector<EncodingRow> rows(static_cast<std::size_t>(k + k / 5));
    for (auto& r : rows) r = sampler(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(inactivation_decode(rows, k));
    }
}
BENCHMARK(BM_InactivationDecode)->Arg(1000)->Arg(5000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_CyclicTrial(benchmark::State& state) {
    const auto k = static_cast<std::int64_t>(state.range(0));
    const SystemParams p = desk(k);
    const CyclicGeometry g = CyclicGeometry::make(k, p.e, Rational(1, 3), Rational(1));
    const double d = delta(p);
    Rng rng(2);
    std::vector<double> lam(5);
    for (auto _ : state) {
        for (auto& l : lam) l = rng.exponential(p.beta);
        benchmark::DoNotOptimize(cyclic_trial(g, lam, d, k + k / 5, k + k / 5, k + k / 5));
    }
}
BENCHMARK(BM_CyclicTrial)->Arg(5000)->Arg(15000);

void BM_TauUInnerMin(benchmark::State& state) {
    const SystemParams p = desk(state.range(0));
    Rng rng(3);
    std::vector<double> lam(5);
    for (auto _ : state) {
        for (auto& l : lam) l = rng.exponential(p.beta);
        benchmark::DoNotOptimize(tau_u_inner_min(lam, p));
    }
}
BENCHMARK(BM_TauUInnerMin)->Arg(5000)->Arg(15000);

void BM_FailureBound(benchmark::State& state) {
    const auto k = static_cast<std::int64_t>(state.range(0));
    const DegreeDistribution dist = robust_soliton(k, std::max<std::int64_t>(2, k / 48), 1e-4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(failure_bound(k, k / 5, 2, dist));
    }
}
BENCHMARK(BM_FailureBound)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
