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

#include "qmi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "qmi/kernels.hpp"

namespace qmi {

std::size_t max_composite_dim() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("QMI_MAX_DIM")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{64};
  }();
  return cap;
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw DimensionError("CMatrix: " + std::to_string(entries_.size()) + " entries for a " +
                         std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<Cplx> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return CMatrix(r, c, std::move(entries));
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::outer(std::span<const Cplx> a, std::span<const Cplx> b) {
  CMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

CMatrix CMatrix::column(std::span<const Cplx> v) { return CMatrix(v.size(), 1, CVector(v.begin(), v.end())); }

CVector CMatrix::col(std::size_t c) const {
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Cplx CMatrix::trace() const {
  Cplx t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

bool CMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Cplx s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

void require_finite(const CMatrix& m, const std::string& what) {
  if (!m.all_finite()) throw ValidationError(what + ": non-finite entry");
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) { return kernels::matmul(a, b); }

CMatrix dagger(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Cplx aij = a(i, j);
      if (aij == Cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
  if (!rho.is_square()) throw DimensionError("partial_trace: matrix is not square");
  if (dims.empty()) throw DimensionError("partial_trace: no factor dimensions");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw DimensionError("partial_trace: zero factor dimension");
    total *= d;
  }
  if (total != rho.rows()) {
    throw DimensionError("partial_trace: factor dimensions multiply to " + std::to_string(total) +
                         ", matrix is " + std::to_string(rho.rows()));
  }
  const auto layout = kernels::trace_layout(dims, keep);
  const std::size_t work = layout.keep_offset.size() * layout.keep_offset.size() * layout.trace_offset.size();
  if (work >= kernels::kParallelWork && !kernels::in_parallel_region()) {
    return kernels::partial_trace_omp(rho, layout);
  }
  return kernels::partial_trace_serial(rho, layout);
}

Cplx inner(std::span<const Cplx> a, std::span<const Cplx> b) {
  if (a.size() != b.size()) throw DimensionError("inner: length mismatch");
  Cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

CVector matvec(const CMatrix& m, std::span<const Cplx> v) {
  if (m.cols() != v.size()) throw DimensionError("matvec: length mismatch");
  CVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Cplx acc{};
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Cplx hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("hs_inner: shape mismatch");
  Cplx acc{};
  for (std::size_t i = 0; i < a.data().size(); ++i) acc += std::conj(a.data()[i]) * b.data()[i];
  return acc;
}

namespace {

constexpr int kMaxSweeps = 100;

EigenSystem jacobi(const CMatrix& h, bool want_vectors) {
  if (!h.is_square() || h.rows() == 0) throw DimensionError("herm_eig: matrix must be square and nonempty");
  require_finite(h, "herm_eig");
  const std::size_t n = h.rows();

  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) asym = std::max(asym, std::abs(h(i, j) - std::conj(h(j, i))));
  if (asym > kHermitianTol) {
    std::ostringstream os;
    os << "herm_eig: matrix is not Hermitian (max |h - h^dagger| = " << asym << ")";
    throw ValidationError(os.str());
  }

  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix();

  const double scale = std::max(1.0, a.max_abs());
  const double target = 1e-15 * scale;

  bool converged = (n == 1);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (sweep > 3 && std::abs(app) + 1e3 * g == std::abs(app) && std::abs(aqq) + 1e3 * g == std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const Cplx e = a(p, q) / g;
        const double theta = (aqq - app) / (2.0 * g);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Cplx se = s * e;
        const Cplx sec = s * std::conj(e);

        for (std::size_t r = 0; r < n; ++r) {
          const Cplx hp = a(r, p), hq = a(r, q);
          a(r, p) = c * hp - sec * hq;
          a(r, q) = se * hp + c * hq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const Cplx hp = a(p, r), hq = a(q, r);
          a(p, r) = c * hp - se * hq;
          a(q, r) = sec * hp + c * hq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (want_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            const Cplx vp = v(r, p), vq = v(r, q);
            v(r, p) = c * vp - sec * vq;
            v(r, q) = se * vp + c * vq;
          }
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) > 1e-12 * scale) throw NumericalError("herm_eig: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenSystem out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]).real();
  if (want_vectors) {
    out.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace

EigenSystem herm_eig(const CMatrix& h) { return jacobi(h, true); }

std::vector<double> herm_eigvals(const CMatrix& h) { return jacobi(h, false).values; }

CMatrix spectral_fn(const CMatrix& h, const std::function<double(double)>& f, bool require_psd) {
  const EigenSystem es = herm_eig(h);
  const std::size_t n = es.values.size();
  std::vector<double> fv(n);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = es.values[k];
    if (lam < -kClampTol && require_psd) {
      std::ostringstream os;
      os << "spectral_fn: eigenvalue " << lam << " below -1e-10 (input not positive semidefinite)";
      throw NumericalError(os.str());
    }
    if (lam < 0.0 && lam >= -kClampTol) lam = 0.0;
    fv[k] = f(lam);
  }
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Cplx acc{};
      for (std::size_t k = 0; k < n; ++k) acc += es.vectors(i, k) * fv[k] * std::conj(es.vectors(j, k));
      out(i, j) = acc;
    }
  return out;
}

}  // namespace qmi
