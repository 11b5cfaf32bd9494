#include <benchmark/benchmark.h>

#include "agsplab/lattice.hpp"

using namespace agsplab;

namespace {

Hamiltonian model(int n) { return build_long_range_ising(n, 3.0, 1.0, 2.0); }

template <class F>
void assemble_bench(benchmark::State& st, F assemble) {
  auto h = model(static_cast<int>(st.range(0)));
  auto ops = local_ops(h.terms);
  for (auto _ : st) benchmark::DoNotOptimize(assemble(ops, h.lattice.n, 2));
}

template <class F>
void apply_bench(benchmark::State& st, F apply) {
  int n = static_cast<int>(st.range(0));
  Matrix op = kron(pauli::X(), pauli::X());
  kernels::LocalOp lo{{0, n - 1}, &op, 1.0};
  Matrix in = Matrix::Random(1L << n, 16), out = Matrix::Zero(1L << n, 16);
  for (auto _ : st) {
    apply(lo, n, 2, in, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <class F>
void sector_bench(benchmark::State& st, F assemble) {
  auto h = model(static_cast<int>(st.range(0)));
  auto ops = local_ops(h.terms);
  for (auto _ : st) benchmark::DoNotOptimize(assemble(ops, h.lattice.n, 0));
}

}  // namespace

static void BM_assemble_serial(benchmark::State& st) { assemble_bench(st, kernels::serial::assemble); }
static void BM_assemble_omp(benchmark::State& st) { assemble_bench(st, kernels::omp::assemble); }
static void BM_apply_serial(benchmark::State& st) { apply_bench(st, kernels::serial::apply); }
static void BM_apply_omp(benchmark::State& st) { apply_bench(st, kernels::omp::apply); }
static void BM_sector_serial(benchmark::State& st) { sector_bench(st, kernels::serial::assemble_sector); }
static void BM_sector_omp(benchmark::State& st) { sector_bench(st, kernels::omp::assemble_sector); }

BENCHMARK(BM_assemble_serial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_omp)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_serial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_omp)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sector_serial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sector_omp)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
