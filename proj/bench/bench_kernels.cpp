// Serial reference vs OpenMP kernel, side by side.

#include <benchmark/benchmark.h>

#include <random>

#include "simerka/arith.hpp"
#include "simerka/bqf.hpp"
#include "simerka/lattice.hpp"
#include "simerka/relations.hpp"
#include "simerka/simerka_map.hpp"

using namespace simerka;

namespace {

void carmichael_parallel(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(carmichael_scan(st.range(0)));
}
void carmichael_serial(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(carmichael_scan_serial(st.range(0)));
}

void forms_parallel(benchmark::State& st)
{
    const Int d = -Int(static_cast<long>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(reduced_forms(d));
}
void forms_serial(benchmark::State& st)
{
    const Int d = -Int(static_cast<long>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(reduced_forms_serial(d));
}

Matrix random_square(std::size_t n)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    Matrix m(n, std::vector<Int>(n));
    for (auto& row : m)
        for (auto& x : row) x = dist(rng);
    return m;
}

void det_parallel(benchmark::State& st)
{
    const Matrix m = random_square(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(modular_determinant(m));
}
void det_serial(benchmark::State& st)
{
    const Matrix m = random_square(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(modular_determinant_serial(m));
}

const FactorBase& bench_base()
{
    static const FactorBase base = build_factor_base(make_discriminant(Int(-1061486612)), 60);
    return base;
}

CollectConfig bench_collect()
{
    CollectConfig cfg;
    cfg.target = 40;
    return cfg;
}

void relations_parallel(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(collect_relations(bench_base(), bench_collect()));
}
void relations_serial(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(collect_relations_serial(bench_base(), bench_collect()));
}

} // namespace

BENCHMARK(carmichael_serial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(carmichael_parallel)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(forms_serial)->Arg(10000079)->Unit(benchmark::kMillisecond);
BENCHMARK(forms_parallel)->Arg(10000079)->Unit(benchmark::kMillisecond);
BENCHMARK(det_serial)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(det_parallel)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(relations_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(relations_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
