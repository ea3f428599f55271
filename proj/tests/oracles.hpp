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

// Test-only reference computations. Deliberately naive and written against
// the raw index definitions, never against library routines under test.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qmi/numerics.hpp"
#include "qmi/state.hpp"

namespace oracle {

using qmi::CMatrix;
using qmi::Cplx;

inline CMatrix random_matrix(std::size_t r, std::size_t c, qmi::SeedableRng& rng) {
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.complex_normal();
  return m;
}

inline CMatrix random_hermitian(std::size_t n, qmi::SeedableRng& rng) {
  CMatrix g = random_matrix(n, n, rng);
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return h;
}

inline CMatrix triple_loop(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Cplx s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t r = a.rows() * b.rows(), c = a.cols() * b.cols();
  CMatrix out(r, c);
  for (std::size_t I = 0; I < r; ++I)
    for (std::size_t J = 0; J < c; ++J) out(I, J) = a(I / b.rows(), J / b.cols()) * b(I % b.rows(), J % b.cols());
  return out;
}

/// Tr_1 of an operator on [2,2,2], keeping factors 0 and 2.
inline CMatrix trace_middle_of_three_qubits(const CMatrix& rho) {
  CMatrix out(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t c2 = 0; c2 < 2; ++c2) {
          Cplx s = 0;
          for (std::size_t b = 0; b < 2; ++b) s += rho(a * 4 + b * 2 + c, a2 * 4 + b * 2 + c2);
          out(a * 2 + c, a2 * 2 + c2) = s;
        }
  return out;
}

inline double binary_entropy(double p) {
  auto eta = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
  return eta(p) + eta(1 - p);
}

/// Eigenvalues of a 2x2 Hermitian matrix, ascending, by the quadratic formula.
inline std::vector<double> eig2(const CMatrix& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double off = std::norm(m(0, 1));
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off);
  return {mid - rad, mid + rad};
}

inline double entropy_of(const std::vector<double>& spectrum) {
  double h = 0;
  for (double x : spectrum)
    if (x > 0) h -= x * std::log2(x);
  return h;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace oracle
