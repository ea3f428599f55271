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

#include <span>
#include <vector>

#include "qmi/channel.hpp"
#include "qmi/state.hpp"

namespace qmi {

/// All entropies are in bits.
struct MutualInfoResult {
  double measured_entropy_in = 0.0;   // S(rho_M)
  double measured_entropy_out = 0.0;  // S(E(rho_M)), pointer traced out
  double joint_entropy_out = 0.0;     // S((E (x) 1)(system-pointer state))
  double mutual_information = 0.0;    // measured_entropy_out - joint_entropy_out; may be negative
};

/// Weighted collection of states on a common space.
class Ensemble {
 public:
  Ensemble(std::vector<double> weights, std::vector<DensityMatrix> members);

  std::size_t size() const { return weights_.size(); }
  std::size_t dim() const { return members_.front().dim(); }
  std::span<const double> weights() const { return weights_; }
  std::span<const DensityMatrix> members() const { return members_; }
  DensityMatrix average() const;

 private:
  std::vector<double> weights_;
  std::vector<DensityMatrix> members_;
};

/// Classical ensemble {(q_i, |phi_i><phi_i|)} a measurement induces.
Ensemble measured_ensemble(const DensityMatrix& rho, const MeasurementBasis& basis);

struct SeparableResult {
  double measured_entropy_out = 0.0;    // S(Tr_P (E (x) 1) rho_c)
  double joint_entropy_out = 0.0;       // S((E (x) 1) rho_c)
  double joint_entropy_in = 0.0;        // S(rho_c)
  double unmeasured_change = 0.0;       // joint_entropy_out - joint_entropy_in
  double mutual_information = 0.0;      // measured_entropy_out - unmeasured_change
};

/// -sum p log2 p. Entries down to -1e-12 are clamped; the sum must be 1 within 1e-9.
double shannon_entropy(std::span<const double> p);
double von_neumann_entropy(const DensityMatrix& rho);
/// Entropy of a plain PSD matrix with unit trace; used where no invariants are rechecked.
double spectrum_entropy(const CMatrix& m);

double measured_information(const DensityMatrix& rho, const MeasurementBasis& basis);

MutualInfoResult mutual_information(const PureState& psi, const MeasurementBasis& basis, const KrausChannel& ch);
MutualInfoResult mutual_information(const DensityMatrix& rho, const MeasurementBasis& basis, const KrausChannel& ch);
/// Same quantity evaluated on the literal three-factor [system, auxiliary, pointer] state.
MutualInfoResult mutual_information_literal(const JointState& three_factor, const KrausChannel& ch);

/// Entropy of W_kl = Tr(K_k rho K_l^dagger): the joint output entropy of any
/// purification of rho.
double entropy_exchange_crosscheck(const DensityMatrix& rho_m, const KrausChannel& ch);

/// S(E(sum w_i rho_i)) - sum w_i S(E(rho_i))
double holevo_reduction(const Ensemble& ens, const KrausChannel& ch);

/// Builds rho_c = sum w_i rho_i (x) |P_i><P_i| explicitly. Members must be
/// mutually orthogonal rank-one projectors (the spectral decomposition of
/// their average); throws ValidationError otherwise.
SeparableResult separable_mutual_information(const Ensemble& ens, const KrausChannel& ch);

/// Tr(rho sigma), clamped to [0, 1 + 1e-9]. Meant for a pure first argument.
double fidelity_pure(const DensityMatrix& rho, const DensityMatrix& sigma);
/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
double fidelity_uhlmann(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qmi
