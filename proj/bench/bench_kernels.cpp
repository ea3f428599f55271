// Copyright 2026 The qmi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qmi/kernels.hpp"

namespace {

using qmi::CMatrix;

CMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(gen), g(gen)};
  return m;
}

template <CMatrix (*Fn)(const CMatrix&, const CMatrix&)>
void BM_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, b));
  state.SetComplexityN(state.range(0));
}

template <CMatrix (*Fn)(std::span<const CMatrix>, const CMatrix&)>
void BM_kraus_sum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<CMatrix> kraus;
  for (unsigned k = 0; k < 4; ++k) kraus.push_back(random_matrix(n, 10 + k));
  const CMatrix rho = random_matrix(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(kraus, rho));
}

template <CMatrix (*Fn)(const CMatrix&, const qmi::kernels::TraceLayout&)>
void BM_partial_trace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const std::size_t dims[] = {d, d, d};
  const std::size_t keep[] = {0, 2};
  const auto layout = qmi::kernels::trace_layout(dims, keep);
  const CMatrix rho = random_matrix(d * d * d, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(rho, layout));
}

}  // namespace

BENCHMARK(BM_matmul<qmi::kernels::matmul_serial>)->Name("matmul/serial")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_matmul<qmi::kernels::matmul_omp>)->Name("matmul/omp")->RangeMultiplier(2)->Range(16, 256)->UseRealTime();
BENCHMARK(BM_kraus_sum<qmi::kernels::kraus_sum_serial>)->Name("kraus_sum/serial")->RangeMultiplier(2)->Range(8, 128);
BENCHMARK(BM_kraus_sum<qmi::kernels::kraus_sum_omp>)
    ->Name("kraus_sum/omp")
    ->RangeMultiplier(2)
    ->Range(8, 128)
    ->UseRealTime();
BENCHMARK(BM_partial_trace<qmi::kernels::partial_trace_serial>)->Name("partial_trace/serial")->DenseRange(2, 6, 2);
BENCHMARK(BM_partial_trace<qmi::kernels::partial_trace_omp>)->Name("partial_trace/omp")->DenseRange(2, 6, 2)->UseRealTime();

BENCHMARK_MAIN();
