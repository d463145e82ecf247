// Serial vs OpenMP grid sweeps. Arg 0 is the serial reference, 1 the parallel kernel.
#include <benchmark/benchmark.h>

#include <string>

#include "sorder/ordering.hpp"
#include "sorder/parallel.hpp"
#include "sorder/quasiprob.hpp"

using namespace sorder;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& st) {
    st.SetLabel(st.range(0) == 0 ? "serial" : "parallel x" + std::to_string(max_threads()));
}

void BM_SymbolField(benchmark::State& st) {
    const DensityMatrix rho = thermal_density(0.5, 48);
    const PhaseGrid grid(5.0, 0.1);
    for (auto _ : st) benchmark::DoNotOptimize(s_symbol_field(rho, -0.5, grid, exec_of(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(grid.size()));
    label(st);
}

void BM_FourierOracle(benchmark::State& st) {
    const PhaseGrid grid(5.0, 0.1);
    for (auto _ : st)
        benchmark::DoNotOptimize(fourier_oracle(PhasePoint(0.3, -0.2), -1.0, grid, 16, exec_of(st)));
    label(st);
}

void BM_SymbolReconstruction(benchmark::State& st) {
    const DensityMatrix rho = thermal_density(0.5, 48);
    const SymbolField f = s_symbol_field(rho, 0.0, PhaseGrid(5.0, 0.1));
    for (auto _ : st) benchmark::DoNotOptimize(reconstruct_from_symbol(f, 48, exec_of(st)));
    label(st);
}

void BM_ElementReconstruction(benchmark::State& st) {
    const DensityMatrix rho = thermal_density(0.5, 48);
    const PhaseGrid grid(5.0, 0.1);
    for (auto _ : st) benchmark::DoNotOptimize(reconstruct_from_elements(rho, -0.5, grid, 48, exec_of(st)));
    label(st);
}

}  // namespace

BENCHMARK(BM_SymbolField)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FourierOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SymbolReconstruction)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ElementReconstruction)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
