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

#include "qmi/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmi {

namespace {

constexpr double kDistributionTol = 1e-9;
constexpr double kMarginalTol = 1e-9;
constexpr double kProjectorTol = 1e-8;
// Eigenvalues below this are rounding noise for square roots of trace-one
// PSD matrices; sqrt would otherwise lift 1e-16 noise to 1e-8.
constexpr double kSqrtNoiseFloor = 1e-13;

std::string num(double x) {
  std::ostringstream os;
  os.precision(9);
  os << x;
  return os.str();
}

double eta(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

CMatrix psd_sqrt(const CMatrix& m) {
  return spectral_fn(m, [](double x) { return x > kSqrtNoiseFloor ? std::sqrt(x) : 0.0; });
}

}  // namespace

double shannon_entropy(std::span<const double> p) {
  if (p.empty()) throw ValidationError("shannon_entropy: empty distribution");
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -1e-12) throw ValidationError("shannon_entropy: negative probability " + num(x));
    sum += x;
  }
  if (std::abs(sum - 1.0) > kDistributionTol) {
    throw ValidationError("shannon_entropy: probabilities sum to " + num(sum) + ", expected 1 ± 1e-9");
  }
  double h = 0.0;
  for (double x : p) h += eta(std::max(0.0, x));
  return h;
}

double spectrum_entropy(const CMatrix& m) {
  double h = 0.0;
  for (double lam : herm_eigvals(m)) {
    if (lam < -kClampTol) throw NumericalError("entropy: eigenvalue " + num(lam) + " below -1e-10");
    h += eta(std::max(0.0, lam));
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) { return spectrum_entropy(rho.mat()); }

double measured_information(const DensityMatrix& rho, const MeasurementBasis& basis) {
  return shannon_entropy(measured_distribution(rho, basis));
}

namespace {

MutualInfoResult evaluate_pointer_state(const JointState& joint, std::span<const double> q,
                                        const MeasurementBasis& basis, const KrausChannel& ch) {
  if (ch.dim_in() != basis.dim()) {
    throw DimensionError("mutual_information: channel input dimension " + std::to_string(ch.dim_in()) +
                         ", state dimension " + std::to_string(basis.dim()));
  }
  const JointState out = apply_extended(ch, joint, 0);
  const std::size_t keep[] = {0};
  const CMatrix marg = partial_trace(out.mat(), out.dims(), keep);

  CMatrix expected(ch.dim_out(), ch.dim_out());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0.0) continue;
    const CVector phi = basis.vector(i);
    expected += apply(ch, DensityMatrix(CMatrix::outer(phi, phi))).mat() * Cplx(q[i]);
  }
  const double resid = max_abs_diff(marg, expected);
  if (resid > kMarginalTol) {
    throw NumericalError("mutual_information: pointer-traced output deviates from sum_i q_i E(|phi_i><phi_i|) by " +
                         num(resid));
  }

  MutualInfoResult r;
  r.measured_entropy_in = shannon_entropy(q);
  r.measured_entropy_out = spectrum_entropy(marg);
  r.joint_entropy_out = von_neumann_entropy(out.state());
  r.mutual_information = r.measured_entropy_out - r.joint_entropy_out;
  return r;
}

}  // namespace

MutualInfoResult mutual_information(const PureState& psi, const MeasurementBasis& basis, const KrausChannel& ch) {
  const auto q = measured_distribution(DensityMatrix::from_pure(psi), basis);
  return evaluate_pointer_state(pointer_entangle_pure(psi, basis), q, basis, ch);
}

MutualInfoResult mutual_information(const DensityMatrix& rho, const MeasurementBasis& basis, const KrausChannel& ch) {
  const auto q = measured_distribution(rho, basis);
  return evaluate_pointer_state(pointer_entangle_mixed(rho, basis), q, basis, ch);
}

MutualInfoResult mutual_information_literal(const JointState& three_factor, const KrausChannel& ch) {
  if (three_factor.dims().size() != 3) throw DimensionError("mutual_information_literal: expected three factors");
  const std::size_t keep_sys[] = {0};
  const std::size_t keep_ptr[] = {2};
  const JointState out = apply_extended(ch, three_factor, 0);
  MutualInfoResult r;
  r.measured_entropy_in = von_neumann_entropy(three_factor.marginal(keep_ptr));
  r.measured_entropy_out = spectrum_entropy(partial_trace(out.mat(), out.dims(), keep_sys));
  r.joint_entropy_out = von_neumann_entropy(out.state());
  r.mutual_information = r.measured_entropy_out - r.joint_entropy_out;
  return r;
}

double entropy_exchange_crosscheck(const DensityMatrix& rho_m, const KrausChannel& ch) {
  if (rho_m.dim() != ch.dim_in()) throw DimensionError("entropy_exchange_crosscheck: dimension mismatch");
  const auto& ks = ch.kraus();
  std::vector<CMatrix> k_rho;
  k_rho.reserve(ks.size());
  for (const auto& k : ks) k_rho.push_back(matmul(k, rho_m.mat()));
  CMatrix w(ks.size(), ks.size());
  for (std::size_t k = 0; k < ks.size(); ++k)
    for (std::size_t l = 0; l < ks.size(); ++l) w(k, l) = hs_inner(ks[l], k_rho[k]);
  return spectrum_entropy(w);
}

Ensemble::Ensemble(std::vector<double> weights, std::vector<DensityMatrix> members)
    : weights_(std::move(weights)), members_(std::move(members)) {
  if (weights_.empty() || weights_.size() != members_.size()) {
    throw ValidationError("ensemble: need matching, nonempty weights and members");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < -1e-12) throw ValidationError("ensemble: negative weight " + num(w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > kDistributionTol) {
    throw ValidationError("ensemble: weights sum to " + num(sum) + ", expected 1 ± 1e-9");
  }
  for (auto& w : weights_) w = std::max(0.0, w);
  for (const auto& m : members_) {
    if (m.dim() != members_.front().dim()) throw DimensionError("ensemble: member dimensions differ");
  }
}

DensityMatrix Ensemble::average() const {
  CMatrix acc(dim(), dim());
  for (std::size_t i = 0; i < size(); ++i) acc += members_[i].mat() * Cplx(weights_[i]);
  return DensityMatrix(std::move(acc));
}

Ensemble measured_ensemble(const DensityMatrix& rho, const MeasurementBasis& basis) {
  auto q = measured_distribution(rho, basis);
  double sum = 0.0;
  for (double x : q) sum += x;
  for (auto& x : q) x /= sum;
  std::vector<DensityMatrix> members;
  members.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const CVector phi = basis.vector(i);
    members.emplace_back(CMatrix::outer(phi, phi));
  }
  return Ensemble(std::move(q), std::move(members));
}

double holevo_reduction(const Ensemble& ens, const KrausChannel& ch) {
  if (ens.dim() != ch.dim_in()) throw DimensionError("holevo_reduction: dimension mismatch");
  double chi = von_neumann_entropy(apply(ch, ens.average()));
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (ens.weights()[i] == 0.0) continue;
    chi -= ens.weights()[i] * von_neumann_entropy(apply(ch, ens.members()[i]));
  }
  return chi;
}

SeparableResult separable_mutual_information(const Ensemble& ens, const KrausChannel& ch) {
  if (ens.dim() != ch.dim_in()) throw DimensionError("separable_mutual_information: dimension mismatch");
  const std::size_t n = ens.size();
  const auto members = ens.members();
  for (std::size_t i = 0; i < n; ++i) {
    const double purity = hs_inner(members[i].mat(), members[i].mat()).real();
    if (purity < 1.0 - kProjectorTol) {
      throw ValidationError("separable_mutual_information: non-Schatten ensemble (member " + std::to_string(i) +
                            " has purity " + num(purity) + ", expected a rank-one projector)");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double overlap = std::abs(hs_inner(members[i].mat(), members[j].mat()));
      if (overlap > kProjectorTol) {
        throw ValidationError("separable_mutual_information: non-Schatten ensemble (members " + std::to_string(i) +
                              " and " + std::to_string(j) + " overlap " + num(overlap) + ")");
      }
    }
  }

  const std::size_t d = ens.dim();
  CMatrix rho_c(d * n, d * n);
  for (std::size_t i = 0; i < n; ++i) {
    CMatrix pointer(n, n);
    pointer(i, i) = 1.0;
    rho_c += tensor(members[i].mat(), pointer) * Cplx(ens.weights()[i]);
  }
  const JointState joint({d, n}, DensityMatrix(std::move(rho_c)));
  const JointState out = apply_extended(ch, joint, 0);
  const std::size_t keep[] = {0};

  SeparableResult r;
  r.measured_entropy_out = spectrum_entropy(partial_trace(out.mat(), out.dims(), keep));
  r.joint_entropy_out = von_neumann_entropy(out.state());
  r.joint_entropy_in = von_neumann_entropy(joint.state());
  r.unmeasured_change = r.joint_entropy_out - r.joint_entropy_in;
  r.mutual_information = r.measured_entropy_out - r.unmeasured_change;
  return r;
}

double fidelity_pure(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity_pure: dimension mismatch");
  const double f = hs_inner(rho.mat(), sigma.mat()).real();
  return std::clamp(f, 0.0, 1.0 + 1e-9);
}

double fidelity_uhlmann(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity_uhlmann: dimension mismatch");
  const CMatrix s = psd_sqrt(rho.mat());
  CMatrix m = matmul(matmul(s, sigma.mat()), s);
  m = (m + dagger(m)) * Cplx(0.5);
  const double tr = psd_sqrt(m).trace().real();
  return std::clamp(tr * tr, 0.0, 1.0);
}

}  // namespace qmi
