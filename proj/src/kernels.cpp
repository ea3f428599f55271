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

#include "qmi/kernels.hpp"

#include <omp.h>

namespace qmi::kernels {

namespace {

void check_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

// out(i, j) += sum_l t(i, l) * conj(k(j, l)), one row i.
inline void accumulate_row_adjoint(const CMatrix& t, const CMatrix& k, CMatrix& out, std::size_t i) {
  const std::size_t inner = t.cols();
  for (std::size_t j = 0; j < k.rows(); ++j) {
    Cplx acc{};
    for (std::size_t l = 0; l < inner; ++l) acc += t(i, l) * std::conj(k(j, l));
    out(i, j) += acc;
  }
}

inline void matmul_row(const CMatrix& a, const CMatrix& b, CMatrix& out, std::size_t i) {
  for (std::size_t l = 0; l < a.cols(); ++l) {
    const Cplx ail = a(i, l);
    if (ail == Cplx{}) continue;
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ail * b(l, j);
  }
}

bool want_parallel(Exec exec, std::size_t work) {
  switch (exec) {
    case Exec::kSerial:
      return false;
    case Exec::kParallel:
      return true;
    case Exec::kAuto:
      break;
  }
  return work >= kParallelWork && !in_parallel_region();
}

}  // namespace

bool in_parallel_region() { return omp_in_parallel() != 0; }

CMatrix matmul_serial(const CMatrix& a, const CMatrix& b) {
  check_product(a, b);
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, out, i);
  return out;
}

CMatrix matmul_omp(const CMatrix& a, const CMatrix& b) {
  check_product(a, b);
  CMatrix out(a.rows(), b.cols());
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) matmul_row(a, b, out, static_cast<std::size_t>(i));
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b, Exec exec) {
  return want_parallel(exec, a.rows() * a.cols() * b.cols()) ? matmul_omp(a, b) : matmul_serial(a, b);
}

namespace {

void check_kraus(std::span<const CMatrix> kraus, const CMatrix& rho) {
  if (kraus.empty()) throw DimensionError("kraus_sum: empty Kraus family");
  if (!rho.is_square()) throw DimensionError("kraus_sum: input is not square");
  for (const auto& k : kraus) {
    if (k.cols() != rho.rows() || k.rows() != kraus.front().rows()) {
      throw DimensionError("kraus_sum: Kraus operator shape does not match input");
    }
  }
}

}  // namespace

CMatrix kraus_sum_serial(std::span<const CMatrix> kraus, const CMatrix& rho) {
  check_kraus(kraus, rho);
  const std::size_t out_dim = kraus.front().rows();
  CMatrix out(out_dim, out_dim);
  for (const auto& k : kraus) {
    const CMatrix t = matmul_serial(k, rho);
    for (std::size_t i = 0; i < out_dim; ++i) accumulate_row_adjoint(t, k, out, i);
  }
  return out;
}

CMatrix kraus_sum_omp(std::span<const CMatrix> kraus, const CMatrix& rho) {
  check_kraus(kraus, rho);
  const std::size_t out_dim = kraus.front().rows();
  CMatrix out(out_dim, out_dim);
  const auto n = static_cast<std::ptrdiff_t>(out_dim);
  for (const auto& k : kraus) {
    const CMatrix t = matmul_omp(k, rho);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) accumulate_row_adjoint(t, k, out, static_cast<std::size_t>(i));
  }
  return out;
}

CMatrix kraus_sum(std::span<const CMatrix> kraus, const CMatrix& rho, Exec exec) {
  const std::size_t n = rho.rows();
  const std::size_t work = kraus.size() * n * n * n;
  return want_parallel(exec, work) ? kraus_sum_omp(kraus, rho) : kraus_sum_serial(kraus, rho);
}

TraceLayout trace_layout(std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
  const std::size_t nf = dims.size();
  std::vector<bool> kept(nf, false);
  for (std::size_t k : keep) {
    if (k >= nf) throw DimensionError("partial_trace: keep index " + std::to_string(k) + " out of range");
    if (kept[k]) throw DimensionError("partial_trace: keep index " + std::to_string(k) + " repeated");
    kept[k] = true;
  }
  std::vector<std::size_t> stride(nf, 1);
  for (std::size_t f = nf; f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  // Offsets enumerate the kept (resp. traced) factors in left-major order.
  auto offsets = [&](bool want_kept) {
    std::vector<std::size_t> out{0};
    for (std::size_t f = 0; f < nf; ++f) {
      if (kept[f] != want_kept) continue;
      std::vector<std::size_t> next;
      next.reserve(out.size() * dims[f]);
      for (std::size_t base : out)
        for (std::size_t i = 0; i < dims[f]; ++i) next.push_back(base + i * stride[f]);
      out = std::move(next);
    }
    return out;
  };
  return {offsets(true), offsets(false)};
}

namespace {

inline void trace_row(const CMatrix& rho, const TraceLayout& layout, CMatrix& out, std::size_t r) {
  const auto& ko = layout.keep_offset;
  const auto& to = layout.trace_offset;
  for (std::size_t c = 0; c < ko.size(); ++c) {
    Cplx acc{};
    for (std::size_t t : to) acc += rho(ko[r] + t, ko[c] + t);
    out(r, c) = acc;
  }
}

}  // namespace

CMatrix partial_trace_serial(const CMatrix& rho, const TraceLayout& layout) {
  const std::size_t n = layout.keep_offset.size();
  CMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) trace_row(rho, layout, out, r);
  return out;
}

CMatrix partial_trace_omp(const CMatrix& rho, const TraceLayout& layout) {
  const std::size_t n = layout.keep_offset.size();
  CMatrix out(n, n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) trace_row(rho, layout, out, static_cast<std::size_t>(r));
  return out;
}

}  // namespace qmi::kernels
