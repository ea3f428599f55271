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

#include "qmi/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qmi {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(9);
  os << x;
  return os.str();
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(a) + " does not match " +
                         std::to_string(b));
  }
}

void require_cap(std::size_t total, const char* what) {
  if (total > max_composite_dim()) {
    throw DimensionError(std::string(what) + ": composite dimension " + std::to_string(total) +
                         " exceeds cap " + std::to_string(max_composite_dim()));
  }
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SeedableRng::SeedableRng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed, 0xffffffffffffffffULL)) {}

SeedableRng SeedableRng::split() { return SeedableRng(mix_seed(seed_ ^ 0x5851f42d4c957f2dULL, splits_++)); }

double SeedableRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SeedableRng::normal() {
  // Box-Muller; u1 in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Cplx SeedableRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw ValidationError("pure state: empty amplitude vector");
  double n2 = 0.0;
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw ValidationError("pure state: non-finite amplitude");
    n2 += std::norm(a);
  }
  const double norm = std::sqrt(n2);
  if (std::abs(norm - 1.0) > kNormTol) {
    throw ValidationError("pure state: norm = " + num(norm) + ", expected 1 ± 1e-10");
  }
}

PureState PureState::normalized(CVector amplitudes) {
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw ValidationError("pure state: cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= inv;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis_state: index out of range");
  CVector v(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

CMatrix PureState::projector() const { return CMatrix::outer(amplitudes_, amplitudes_); }

DensityMatrix::DensityMatrix(CMatrix mat) : mat_(std::move(mat)) {
  if (!mat_.is_square() || mat_.rows() == 0) throw ValidationError("density matrix: must be square and nonempty");
  require_finite(mat_, "density matrix");
  double asym = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) asym = std::max(asym, std::abs(mat_(i, j) - std::conj(mat_(j, i))));
  if (asym > kDensityTol) {
    throw ValidationError("density matrix: hermiticity residual = " + num(asym) + ", expected <= 1e-8");
  }
  const Cplx tr = mat_.trace();
  if (std::abs(tr - 1.0) > kDensityTol) {
    throw ValidationError("density matrix: trace = " + num(tr.real()) + ", expected 1 ± 1e-8");
  }
  const auto ev = herm_eigvals(mat_);
  if (ev.front() < -kClampTol) {
    throw ValidationError("density matrix: eigenvalue " + num(ev.front()) + ", expected >= -1e-10");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(CMatrix::identity(dim) * Cplx(1.0 / static_cast<double>(dim)));
}

bool DensityMatrix::is_pure() const { return hs_inner(mat_, mat_).real() >= 1.0 - kDensityTol; }

MeasurementBasis::MeasurementBasis(CMatrix columns) : columns_(std::move(columns)) {
  if (!columns_.is_square() || columns_.rows() == 0) throw ValidationError("basis: column matrix must be square");
  require_finite(columns_, "basis");
  const double resid = max_abs_diff(matmul(dagger(columns_), columns_), CMatrix::identity(dim()));
  if (resid > kNormTol) {
    throw ValidationError("basis: orthonormality residual = " + num(resid) + ", expected <= 1e-10");
  }
}

MeasurementBasis MeasurementBasis::computational(std::size_t dim) { return MeasurementBasis(CMatrix::identity(dim)); }

MeasurementBasis MeasurementBasis::hadamard(std::size_t dim) {
  CMatrix f(dim, dim);
  const double s = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = 0; k < dim; ++k) {
      // Exact signs for dim 2 so the qubit case is the textbook Hadamard.
      if (dim == 2) {
        f(j, k) = (j == 1 && k == 1) ? -s : s;
      } else {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(dim);
        f(j, k) = s * Cplx(std::cos(ang), std::sin(ang));
      }
    }
  return MeasurementBasis(std::move(f));
}

JointState::JointState(std::vector<std::size_t> dims, DensityMatrix state)
    : dims_(std::move(dims)), state_(std::move(state)) {
  std::size_t total = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw DimensionError("joint state: zero factor dimension");
    total *= d;
  }
  if (dims_.empty() || total != state_.dim()) {
    throw DimensionError("joint state: factor dimensions multiply to " + std::to_string(total) + ", state is " +
                         std::to_string(state_.dim()));
  }
  require_cap(total, "joint state");
}

JointState JointState::from_pure(std::vector<std::size_t> dims, const PureState& psi) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  require_cap(total, "joint state");
  return JointState(std::move(dims), DensityMatrix::from_pure(psi));
}

DensityMatrix JointState::marginal(std::span<const std::size_t> keep) const {
  return DensityMatrix(partial_trace(mat(), dims_, keep));
}

std::vector<double> measured_distribution(const DensityMatrix& rho, const MeasurementBasis& basis) {
  require_same_dim(rho.dim(), basis.dim(), "measured_distribution");
  const std::size_t d = rho.dim();
  std::vector<double> q(d);
  for (std::size_t i = 0; i < d; ++i) {
    const CVector phi = basis.vector(i);
    q[i] = std::max(0.0, inner(phi, matvec(rho.mat(), phi)).real());
  }
  return q;
}

DensityMatrix dephase(const DensityMatrix& rho, const MeasurementBasis& basis) {
  const auto q = measured_distribution(rho, basis);
  CMatrix out(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const CVector phi = basis.vector(i);
    out += CMatrix::outer(phi, phi) * Cplx(q[i]);
  }
  return DensityMatrix(std::move(out));
}

namespace {

// sum_i w_i |phi_i>|P_i>
PureState pointer_vector(const MeasurementBasis& basis, std::span<const Cplx> weights) {
  const std::size_t d = basis.dim();
  CVector v(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t s = 0; s < d; ++s) v[s * d + i] = weights[i] * basis.columns()(s, i);
  return PureState::normalized(std::move(v));
}

}  // namespace

PureState pointer_vector_pure(const PureState& psi, const MeasurementBasis& basis) {
  require_same_dim(psi.dim(), basis.dim(), "pointer_entangle_pure");
  CVector a(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) a[i] = inner(basis.vector(i), psi.amplitudes());
  return pointer_vector(basis, a);
}

JointState pointer_entangle_pure(const PureState& psi, const MeasurementBasis& basis) {
  const std::size_t d = psi.dim();
  return JointState::from_pure({d, d}, pointer_vector_pure(psi, basis));
}

PureState pointer_vector_mixed(const DensityMatrix& rho, const MeasurementBasis& basis) {
  const auto q = measured_distribution(rho, basis);
  CVector w(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) w[i] = std::sqrt(q[i]);
  return pointer_vector(basis, w);
}

JointState pointer_entangle_mixed(const DensityMatrix& rho, const MeasurementBasis& basis) {
  const std::size_t d = rho.dim();
  return JointState::from_pure({d, d}, pointer_vector_mixed(rho, basis));
}

PureState purify(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const EigenSystem es = herm_eig(rho.mat());
  CVector chi(d * d);
  for (std::size_t m = 0; m < d; ++m) {
    const std::size_t k = d - 1 - m;  // descending
    const double p = std::max(0.0, es.values[k]);
    CVector vec = es.vectors.col(k);
    for (const auto& z : vec) {
      if (std::abs(z) > 1e-12) {
        const Cplx phase = std::conj(z) / std::abs(z);
        for (auto& w : vec) w *= phase;
        break;
      }
    }
    const double amp = std::sqrt(p);
    for (std::size_t s = 0; s < d; ++s) chi[s * d + m] = amp * vec[s];
  }
  return PureState::normalized(std::move(chi));
}

JointState three_factor_pointer_state(const DensityMatrix& rho, const MeasurementBasis& basis) {
  require_same_dim(rho.dim(), basis.dim(), "three_factor_pointer_state");
  return three_factor_pointer_state(purify(rho), basis);
}

JointState three_factor_pointer_state(const PureState& purification, const MeasurementBasis& basis) {
  const std::size_t d = basis.dim();
  require_same_dim(purification.dim(), d * d, "three_factor_pointer_state");
  require_cap(d * d * d, "three_factor_pointer_state");
  const auto chi = purification.amplitudes();
  const CMatrix& phi = basis.columns();
  CVector out(d * d * d);
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t a = 0; a < d; ++a) {
      Cplx proj{};  // <phi_p| (x) <a| applied to chi
      for (std::size_t s = 0; s < d; ++s) proj += std::conj(phi(s, p)) * chi[s * d + a];
      for (std::size_t s = 0; s < d; ++s) out[(s * d + a) * d + p] = phi(s, p) * proj;
    }
  }
  return JointState::from_pure({d, d, d}, PureState::normalized(std::move(out)));
}

CMatrix random_isometry(std::size_t rows, std::size_t cols, SeedableRng& rng) {
  if (rows == 0 || cols == 0 || cols > rows) throw DimensionError("random_isometry: need rows >= cols >= 1");
  CMatrix g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) g(r, c) = rng.complex_normal();
  // Modified Gram-Schmidt with one reorthogonalization pass; R has a positive
  // diagonal, which makes Q Haar distributed.
  for (std::size_t c = 0; c < cols; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < c; ++k) {
        Cplx proj{};
        for (std::size_t r = 0; r < rows; ++r) proj += std::conj(g(r, k)) * g(r, c);
        for (std::size_t r = 0; r < rows; ++r) g(r, c) -= proj * g(r, k);
      }
    }
    double n2 = 0.0;
    for (std::size_t r = 0; r < rows; ++r) n2 += std::norm(g(r, c));
    const double n = std::sqrt(n2);
    if (!(n > 1e-300)) throw NumericalError("random_isometry: degenerate Gaussian sample");
    for (std::size_t r = 0; r < rows; ++r) g(r, c) /= n;
  }
  return g;
}

PureState random_pure(std::size_t dim, SeedableRng& rng) {
  if (dim == 0) throw DimensionError("random_pure: dimension must be positive");
  CVector v(dim);
  for (auto& z : v) z = rng.complex_normal();
  return PureState::normalized(std::move(v));
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, SeedableRng& rng) {
  if (dim == 0 || rank == 0 || rank > dim) {
    throw DimensionError("random_density: need 1 <= rank <= dim, got dim " + std::to_string(dim) + ", rank " +
                         std::to_string(rank));
  }
  const PureState psi = random_pure(dim * rank, rng);
  const std::size_t dims[] = {dim, rank};
  const std::size_t keep[] = {0};
  CMatrix m = partial_trace(psi.projector(), dims, keep);
  // Enforce exact hermiticity; the trace is already 1 to rounding.
  const CMatrix h = (m + dagger(m)) * Cplx(0.5);
  return DensityMatrix(h);
}

MeasurementBasis random_basis(std::size_t dim, SeedableRng& rng) {
  return MeasurementBasis(random_isometry(dim, dim, rng));
}

}  // namespace qmi
