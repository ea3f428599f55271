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

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmi {

using Cplx = std::complex<double>;
using CVector = std::vector<Cplx>;

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or factor structures that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates a domain invariant (trace, hermiticity, completeness...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Iterative routine failed or a spectrum left its admissible range.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Composite dimension cap. Defaults to 64; the QMI_MAX_DIM environment
/// variable overrides it (read once per process).
std::size_t max_composite_dim();

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Cplx> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix from_rows(std::initializer_list<std::initializer_list<Cplx>> rows);
  static CMatrix diagonal(std::span<const double> values);
  /// |a><b|
  static CMatrix outer(std::span<const Cplx> a, std::span<const Cplx> b);
  static CMatrix column(std::span<const Cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  Cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Cplx> data() { return entries_; }
  std::span<const Cplx> data() const { return entries_; }

  CVector col(std::size_t c) const;

  Cplx trace() const;
  double max_abs() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Cplx s) { return a *= s; }
  friend CMatrix operator*(Cplx s, CMatrix a) { return a *= s; }
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cplx> entries_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Throws ValidationError naming `what` if any entry is NaN or Inf.
void require_finite(const CMatrix& m, const std::string& what);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix dagger(const CMatrix& a);

/// Kronecker product. Composite index = i_left * dim_right + i_right.
CMatrix tensor(const CMatrix& a, const CMatrix& b);

/// Reduced matrix on the factors listed in `keep` (any order; output keeps
/// the original factor ordering).
CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

/// <a|b> with the left argument conjugated.
Cplx inner(std::span<const Cplx> a, std::span<const Cplx> b);
CVector matvec(const CMatrix& m, std::span<const Cplx> v);

/// Hilbert-Schmidt pairing Tr(a^dagger b).
Cplx hs_inner(const CMatrix& a, const CMatrix& b);

struct EigenSystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns are eigenvectors
};

/// Entries of h - h^dagger above this are rejected by herm_eig.
inline constexpr double kHermitianTol = 1e-8;
/// Eigenvalues in [-kClampTol, 0) are treated as rounding noise.
inline constexpr double kClampTol = 1e-10;

/// Cyclic complex Jacobi on the Hermitian part of h.
EigenSystem herm_eig(const CMatrix& h);

/// Only the spectrum; same routine, eigenvectors not accumulated.
std::vector<double> herm_eigvals(const CMatrix& h);

/// V f(L) V^dagger. Eigenvalues in [-1e-10, 0) are clamped to zero first;
/// with `require_psd`, anything below -1e-10 throws NumericalError.
CMatrix spectral_fn(const CMatrix& h, const std::function<double(double)>& f,
                    bool require_psd = true);

}  // namespace qmi
