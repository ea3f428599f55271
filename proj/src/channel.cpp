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

#include "qmi/channel.hpp"

#include <cmath>
#include <sstream>

#include "qmi/kernels.hpp"

namespace qmi {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(9);
  os << x;
  return os.str();
}

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError(std::string(what) + ": parameter " + num(x) + " outside [0, 1]");
}

}  // namespace

double completeness_residual(const std::vector<CMatrix>& kraus) {
  const std::size_t n = kraus.front().cols();
  CMatrix acc(n, n);
  for (const auto& k : kraus) acc += matmul(dagger(k), k);
  return max_abs_diff(acc, CMatrix::identity(n));
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus, std::string name)
    : kraus_(std::move(kraus)), name_(std::move(name)) {
  if (kraus_.empty()) throw ValidationError("channel: empty Kraus family");
  if (kraus_.size() > kDefaultKrausCap) {
    throw ValidationError("channel: " + std::to_string(kraus_.size()) + " Kraus operators exceed cap " +
                          std::to_string(kDefaultKrausCap));
  }
  const std::size_t rows = kraus_.front().rows();
  const std::size_t cols = kraus_.front().cols();
  if (rows == 0 || cols == 0) throw ValidationError("channel: empty Kraus operator");
  for (const auto& k : kraus_) {
    if (k.rows() != rows || k.cols() != cols) throw ValidationError("channel: Kraus operators differ in shape");
    require_finite(k, "channel");
  }
  const double resid = completeness_residual(kraus_);
  if (resid > kCompletenessTol) {
    throw ValidationError("channel: Kraus completeness residual = " + num(resid) + ", expected <= 1e-8");
  }
}

AdjointMap::AdjointMap(const KrausChannel& ch) {
  kraus_.reserve(ch.kraus().size());
  for (const auto& k : ch.kraus()) kraus_.push_back(dagger(k));
}

CMatrix AdjointMap::apply(const CMatrix& a) const { return kernels::kraus_sum(kraus_, a); }

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) {
    throw DimensionError("apply: channel input dimension " + std::to_string(ch.dim_in()) + ", state dimension " +
                         std::to_string(rho.dim()));
  }
  CMatrix out = kernels::kraus_sum(ch.kraus(), rho.mat());
  return DensityMatrix((out + dagger(out)) * Cplx(0.5));
}

std::vector<CMatrix> extend_kraus(const std::vector<CMatrix>& kraus, std::span<const std::size_t> dims,
                                  std::size_t target_factor) {
  if (target_factor >= dims.size()) throw DimensionError("apply_extended: target factor out of range");
  if (dims[target_factor] != kraus.front().cols()) {
    throw DimensionError("apply_extended: factor " + std::to_string(target_factor) + " has dimension " +
                         std::to_string(dims[target_factor]) + ", channel expects " +
                         std::to_string(kraus.front().cols()));
  }
  std::size_t left = 1, right = 1;
  for (std::size_t f = 0; f < target_factor; ++f) left *= dims[f];
  for (std::size_t f = target_factor + 1; f < dims.size(); ++f) right *= dims[f];
  const CMatrix il = CMatrix::identity(left);
  const CMatrix ir = CMatrix::identity(right);
  std::vector<CMatrix> out;
  out.reserve(kraus.size());
  for (const auto& k : kraus) out.push_back(tensor(tensor(il, k), ir));
  return out;
}

JointState apply_extended(const KrausChannel& ch, const JointState& joint, std::size_t target_factor) {
  const auto big = extend_kraus(ch.kraus(), joint.dims(), target_factor);
  CMatrix out = kernels::kraus_sum(big, joint.mat());
  std::vector<std::size_t> dims(joint.dims().begin(), joint.dims().end());
  dims[target_factor] = ch.dim_out();
  return JointState(std::move(dims), DensityMatrix((out + dagger(out)) * Cplx(0.5)));
}

KrausChannel compose(const KrausChannel& e2, const KrausChannel& e1) {
  if (e1.dim_out() != e2.dim_in()) throw DimensionError("compose: e1 output does not match e2 input");
  std::vector<CMatrix> ks;
  ks.reserve(e1.kraus().size() * e2.kraus().size());
  for (const auto& k2 : e2.kraus())
    for (const auto& k1 : e1.kraus()) ks.push_back(matmul(k2, k1));
  return KrausChannel(std::move(ks), e2.name() + "*" + e1.name());
}

AdjointMap adjoint_channel(const KrausChannel& ch) { return AdjointMap(ch); }

namespace channels {

namespace {

const CMatrix& pauli_x() {
  static const CMatrix m = CMatrix::from_rows({{0, 1}, {1, 0}});
  return m;
}
const CMatrix& pauli_y() {
  static const CMatrix m = CMatrix::from_rows({{0, Cplx(0, -1)}, {Cplx(0, 1), 0}});
  return m;
}
const CMatrix& pauli_z() {
  static const CMatrix m = CMatrix::from_rows({{1, 0}, {0, -1}});
  return m;
}

}  // namespace

KrausChannel identity(std::size_t dim) { return KrausChannel({CMatrix::identity(dim)}, "identity"); }

KrausChannel unitary(const CMatrix& u) {
  if (!u.is_square()) throw ValidationError("unitary: matrix is not square");
  const double resid = max_abs_diff(matmul(dagger(u), u), CMatrix::identity(u.rows()));
  if (resid > kCompletenessTol) throw ValidationError("unitary: U^dagger U residual = " + num(resid) + ", expected <= 1e-8");
  return KrausChannel({u}, "unitary");
}

KrausChannel depolarizing(double p) {
  require_unit_interval(p, "depolarizing");
  const CMatrix i2 = CMatrix::identity(2);
  const double a = std::sqrt(1.0 - 0.75 * p);
  const double b = std::sqrt(0.25 * p);
  return KrausChannel({i2 * Cplx(a), pauli_x() * Cplx(b), pauli_y() * Cplx(b), pauli_z() * Cplx(b)}, "depolarizing");
}

KrausChannel dephasing(double lambda) {
  require_unit_interval(lambda, "dephasing");
  return KrausChannel({CMatrix::identity(2) * Cplx(std::sqrt(1.0 - 0.5 * lambda)),
                       pauli_z() * Cplx(std::sqrt(0.5 * lambda))},
                      "dephasing");
}

KrausChannel amplitude_damping(double gamma) {
  require_unit_interval(gamma, "amplitude_damping");
  return KrausChannel({CMatrix::from_rows({{1, 0}, {0, std::sqrt(1.0 - gamma)}}),
                       CMatrix::from_rows({{0, std::sqrt(gamma)}, {0, 0}})},
                      "amplitude_damping");
}

KrausChannel bit_flip(double p) {
  require_unit_interval(p, "bit_flip");
  return KrausChannel({CMatrix::identity(2) * Cplx(std::sqrt(1.0 - p)), pauli_x() * Cplx(std::sqrt(p))}, "bit_flip");
}

KrausChannel random(std::size_t dim, std::size_t kraus_count, SeedableRng& rng) {
  if (dim == 0 || kraus_count == 0) throw DimensionError("random_channel: dimension and Kraus count must be positive");
  if (kraus_count > kDefaultKrausCap) throw DimensionError("random_channel: Kraus count exceeds cap");
  const CMatrix v = random_isometry(dim * kraus_count, dim, rng);
  std::vector<CMatrix> ks(kraus_count, CMatrix(dim, dim));
  for (std::size_t j = 0; j < kraus_count; ++j)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) ks[j](r, c) = v(j * dim + r, c);
  return KrausChannel(std::move(ks), "random");
}

}  // namespace channels

}  // namespace qmi
