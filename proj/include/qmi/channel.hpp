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
#include <string>
#include <vector>

#include "qmi/numerics.hpp"
#include "qmi/state.hpp"

namespace qmi {

inline constexpr double kCompletenessTol = 1e-8;
inline constexpr std::size_t kDefaultKrausCap = 16;

/// Trace-preserving completely positive map rho -> sum_k K_k rho K_k^dagger.
class KrausChannel {
 public:
  /// Validates shapes, the Kraus-count cap and sum_k K_k^dagger K_k = I
  /// within 1e-8. `name` is informational.
  explicit KrausChannel(std::vector<CMatrix> kraus, std::string name = "kraus");

  std::size_t dim_in() const { return kraus_.front().cols(); }
  std::size_t dim_out() const { return kraus_.front().rows(); }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<CMatrix> kraus_;
  std::string name_;
};

/// max |sum_k K_k^dagger K_k - I|
double completeness_residual(const std::vector<CMatrix>& kraus);

/// Heisenberg-picture adjoint with Kraus family {K_k^dagger}. Unital but in
/// general not trace preserving, so it acts on plain matrices.
class AdjointMap {
 public:
  explicit AdjointMap(const KrausChannel& ch);

  std::size_t dim_in() const { return kraus_.front().cols(); }
  std::size_t dim_out() const { return kraus_.front().rows(); }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  static constexpr bool trace_preserving() { return false; }

  CMatrix apply(const CMatrix& a) const;

 private:
  std::vector<CMatrix> kraus_;
};

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Kraus operators of `kraus` embedded at `target_factor`, identities elsewhere.
std::vector<CMatrix> extend_kraus(const std::vector<CMatrix>& kraus, std::span<const std::size_t> dims,
                                  std::size_t target_factor);

/// (1 (x) ... (x) E (x) ... (x) 1)(joint). The target factor's dimension
/// becomes dim_out.
JointState apply_extended(const KrausChannel& ch, const JointState& joint, std::size_t target_factor);

/// Kraus family {K2_l K1_k}: first e1, then e2.
KrausChannel compose(const KrausChannel& e2, const KrausChannel& e1);

AdjointMap adjoint_channel(const KrausChannel& ch);

namespace channels {

KrausChannel identity(std::size_t dim);
KrausChannel unitary(const CMatrix& u);
/// rho -> (1 - p) rho + p I/2
KrausChannel depolarizing(double p);
/// Off-diagonals scaled by (1 - lambda).
KrausChannel dephasing(double lambda);
KrausChannel amplitude_damping(double gamma);
KrausChannel bit_flip(double p);
/// Stinespring sampling: Kraus operators are the blocks of a Haar isometry
/// from d to d * kraus_count.
KrausChannel random(std::size_t dim, std::size_t kraus_count, SeedableRng& rng);

}  // namespace channels

}  // namespace qmi
