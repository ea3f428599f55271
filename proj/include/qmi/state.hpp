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

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qmi/numerics.hpp"

namespace qmi {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kDensityTol = 1e-8;

/// splitmix64 finalizer applied to (seed, index); used to derive child streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic generator. Sampling is done in-house on top of mt19937_64 so
/// streams are identical across standard libraries.
class SeedableRng {
 public:
  explicit SeedableRng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t split_count() const { return splits_; }

  /// Next child stream; advances the split counter.
  SeedableRng split();
  /// Child stream for a fixed index, independent of the split counter.
  SeedableRng stream(std::uint64_t index) const { return SeedableRng(mix_seed(seed_, index)); }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();
  /// Real and imaginary parts independent standard normals.
  Cplx complex_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t splits_ = 0;
  std::mt19937_64 engine_;
};

class PureState {
 public:
  /// Throws ValidationError unless the amplitudes have unit norm within 1e-10.
  explicit PureState(CVector amplitudes);
  /// Rescales to unit norm; throws on a zero vector.
  static PureState normalized(CVector amplitudes);
  static PureState basis_state(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Cplx> amplitudes() const { return amplitudes_; }
  CMatrix projector() const;

 private:
  CVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Checks hermiticity and unit trace (1e-8) and eigenvalues >= -1e-10.
  explicit DensityMatrix(CMatrix mat);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return mat_.rows(); }
  const CMatrix& mat() const { return mat_; }
  /// Tr(rho^2) >= 1 - 1e-8
  bool is_pure() const;

 private:
  CMatrix mat_;
};

/// Orthonormal measurement basis; column i is |phi_i>. Pointer states are the
/// computational basis of an ancilla with the same dimension.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(CMatrix columns);
  static MeasurementBasis computational(std::size_t dim);
  /// Hadamard for dim 2; the discrete Fourier basis otherwise.
  static MeasurementBasis hadamard(std::size_t dim);

  std::size_t dim() const { return columns_.rows(); }
  const CMatrix& columns() const { return columns_; }
  CVector vector(std::size_t i) const { return columns_.col(i); }

 private:
  CMatrix columns_;
};

/// State on a composite space with explicit factor dimensions (left-major).
class JointState {
 public:
  JointState(std::vector<std::size_t> dims, DensityMatrix state);
  static JointState from_pure(std::vector<std::size_t> dims, const PureState& psi);

  std::span<const std::size_t> dims() const { return dims_; }
  const DensityMatrix& state() const { return state_; }
  const CMatrix& mat() const { return state_.mat(); }
  DensityMatrix marginal(std::span<const std::size_t> keep) const;

 private:
  std::vector<std::size_t> dims_;
  DensityMatrix state_;
};

/// q_i = <phi_i|rho|phi_i>
std::vector<double> measured_distribution(const DensityMatrix& rho, const MeasurementBasis& basis);
/// sum_i q_i |phi_i><phi_i|
DensityMatrix dephase(const DensityMatrix& rho, const MeasurementBasis& basis);

/// sum_i a_i |phi_i>|P_i> with a_i = <phi_i|psi>, factors [system, pointer].
PureState pointer_vector_pure(const PureState& psi, const MeasurementBasis& basis);
JointState pointer_entangle_pure(const PureState& psi, const MeasurementBasis& basis);

/// Collapsed form sum_i sqrt(q_i) |phi_i>|P_i>.
PureState pointer_vector_mixed(const DensityMatrix& rho, const MeasurementBasis& basis);
JointState pointer_entangle_mixed(const DensityMatrix& rho, const MeasurementBasis& basis);

/// sum_m sqrt(p_m)|S_m>|m> on [d, d]; eigenvalues descending, each
/// eigenvector's first nonzero entry real positive, zero weights padded.
PureState purify(const DensityMatrix& rho);

/// Literal three-factor construction on [system, auxiliary, pointer]:
/// sum_i (|phi_i><phi_i| (x) 1)|chi> (x) |P_i>.
JointState three_factor_pointer_state(const DensityMatrix& rho, const MeasurementBasis& basis);
/// Same, from a caller-supplied purification on [d, d].
JointState three_factor_pointer_state(const PureState& purification, const MeasurementBasis& basis);

/// rows x cols matrix with orthonormal columns, Haar distributed (rows >= cols).
CMatrix random_isometry(std::size_t rows, std::size_t cols, SeedableRng& rng);
PureState random_pure(std::size_t dim, SeedableRng& rng);
/// Marginal of a random pure state on dim x rank.
DensityMatrix random_density(std::size_t dim, std::size_t rank, SeedableRng& rng);
MeasurementBasis random_basis(std::size_t dim, SeedableRng& rng);

}  // namespace qmi
