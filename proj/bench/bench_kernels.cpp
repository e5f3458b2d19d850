#include <benchmark/benchmark.h>

#include "hod/deflation.h"
#include "hod/dual_space.h"
#include "hod/io.h"
#include "hod/kernels.h"

using namespace hod;

namespace {

const char* kLec02 =
    "vars: x1 x2 x3\n"
    "2*x1 + 2*x1^2 + 2*x2 + 2*x2^2 + x3^2 - 1;\n"
    "(x1 + x2 - x3 - 1)^3 - x1^3;\n"
    "(2*x1^3 + 2*x2^2 + 10*x3 + 5*x3^2 + 5)^3 - 1000*x1^5;\n";

const PolySystem& lec02() {
  static const PolySystem F = parse_system(kLec02);
  return F;
}

const Point kRoot{0.0, 0.0, -1.0};

struct MdzInput {
  std::vector<Polynomial> shifted;
  std::vector<Exponent> rows, cols;
};

MdzInput mdz_input(int d) {
  MdzInput in;
  for (const auto& f : lec02().polys()) in.shifted.push_back(translate(f, kRoot));
  in.rows = monomials_up_to(3, d - 1);
  in.cols = MonomialFrame(3, d).nonzero();
  return in;
}

void BM_MdzParallel(benchmark::State& state) {
  const auto in = mdz_input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::assemble_mdz(in.shifted, in.rows, in.cols));
}

void BM_MdzSerialReference(benchmark::State& state) {
  const auto in = mdz_input(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::assemble_mdz_reference(lec02().polys(), kRoot, in.rows, in.cols));
  }
}

void BM_EvaluateParallel(benchmark::State& state) {
  const auto A = deflation_matrix(lec02(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::evaluate_entries(A.entries(), A.rows(), A.cols(), kRoot));
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto A = deflation_matrix(lec02(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::evaluate_entries_serial(A.entries(), A.rows(), A.cols(), kRoot));
  }
}

}  // namespace

BENCHMARK(BM_MdzParallel)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MdzSerialReference)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateSerial)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
