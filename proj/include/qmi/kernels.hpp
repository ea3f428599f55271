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

#pragma once

// Hot loops of the library in two flavours: a plain serial reference and an
// OpenMP version. Each output entry is accumulated by exactly one thread in
// the same order as the serial loop, so both produce bit-identical results.

#include <cstddef>
#include <span>
#include <vector>

#include "qmi/numerics.hpp"

namespace qmi::kernels {

enum class Exec { kSerial, kParallel, kAuto };

/// Output work (rows*cols*inner) at which kAuto switches to OpenMP.
inline constexpr std::size_t kParallelWork = 32 * 32 * 32;

CMatrix matmul_serial(const CMatrix& a, const CMatrix& b);
CMatrix matmul_omp(const CMatrix& a, const CMatrix& b);
CMatrix matmul(const CMatrix& a, const CMatrix& b, Exec exec = Exec::kAuto);

/// sum_k K_k rho K_k^dagger
CMatrix kraus_sum_serial(std::span<const CMatrix> kraus, const CMatrix& rho);
CMatrix kraus_sum_omp(std::span<const CMatrix> kraus, const CMatrix& rho);
CMatrix kraus_sum(std::span<const CMatrix> kraus, const CMatrix& rho, Exec exec = Exec::kAuto);

/// Index tables for a partial trace: full index = keep_offset[k] + trace_offset[t].
struct TraceLayout {
  std::vector<std::size_t> keep_offset;
  std::vector<std::size_t> trace_offset;
};
TraceLayout trace_layout(std::span<const std::size_t> dims, std::span<const std::size_t> keep);

CMatrix partial_trace_serial(const CMatrix& rho, const TraceLayout& layout);
CMatrix partial_trace_omp(const CMatrix& rho, const TraceLayout& layout);

/// True when called from inside an active OpenMP parallel region.
bool in_parallel_region();

}  // namespace qmi::kernels
