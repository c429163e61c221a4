// Serial reference vs OpenMP kernels.

#include "cdphy/kernels.hpp"
#include "cdphy/secrecy.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

const cdphy::ConstellationScheme& circ()
{
    static const auto s = cdphy::make_standard_scheme("qam16_circ");
    return s;
}

const cdphy::ConstellationScheme& rect()
{
    static const auto s = cdphy::make_standard_scheme("qam16_rect");
    return s;
}

constexpr std::uint64_t kSymbols = 16 * cdphy::kBlockSymbols;

void BM_LinkSerial(benchmark::State& state)
{
    const cdphy::LinkJob job{&circ(), &rect(), 5.0, kSymbols, 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(cdphy::simulate_link_serial(job));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSymbols));
}
BENCHMARK(BM_LinkSerial)->Unit(benchmark::kMillisecond);

void BM_LinkParallel(benchmark::State& state)
{
    const cdphy::LinkJob job{&circ(), &rect(), 5.0, kSymbols, 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(cdphy::simulate_link(job, static_cast<int>(state.range(0))));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSymbols));
}
BENCHMARK(BM_LinkParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

cdphy::BinaryMatrix dense(std::size_t n)
{
    std::mt19937_64 g(n);
    std::bernoulli_distribution coin(0.7);
    std::vector<std::uint8_t> e(n * n);
    for (auto& x : e)
        x = coin(g);
    return cdphy::BinaryMatrix(n, std::move(e));
}

void BM_PermanentSerial(benchmark::State& state)
{
    const auto m = dense(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(cdphy::permanent_serial(m));
}
BENCHMARK(BM_PermanentSerial)->DenseRange(14, 20, 2)->Unit(benchmark::kMillisecond);

void BM_PermanentParallel(benchmark::State& state)
{
    const auto m = dense(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(cdphy::permanent(m));
}
BENCHMARK(BM_PermanentParallel)->DenseRange(14, 20, 2)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
