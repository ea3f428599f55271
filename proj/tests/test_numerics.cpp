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


#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "qmi/numerics.hpp"

using namespace qmi;

namespace {

const CMatrix X = CMatrix::from_rows({{0, 1}, {1, 0}});
const CMatrix Y = CMatrix::from_rows({{0, Cplx(0, -1)}, {Cplx(0, 1), 0}});

}  // namespace

TEST_CASE("matmul") {
  CHECK(matmul(CMatrix::identity(2), X) == X);
  CHECK(max_abs_diff(matmul(X, X), CMatrix::identity(2)) == 0.0);

  SeedableRng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = oracle::random_matrix(3, 3, rng);
    const CMatrix b = oracle::random_matrix(3, 3, rng);
    CHECK(max_abs_diff(matmul(a, b), oracle::triple_loop(a, b)) <= 1e-12);
  }
  CHECK_THROWS_AS(matmul(CMatrix(2, 3), CMatrix(2, 3)), DimensionError);
}

TEST_CASE("dagger") {
  CHECK(dagger(CMatrix::identity(2)) == CMatrix::identity(2));
  CHECK(dagger(Y) == Y);
  SeedableRng rng(4);
  const CMatrix a = oracle::random_matrix(3, 5, rng);
  CHECK(dagger(dagger(a)) == a);
}

TEST_CASE("tensor") {
  CHECK(tensor(CMatrix::identity(2), CMatrix::identity(2)) == CMatrix::identity(4));

  const CMatrix p0 = CMatrix::from_rows({{1, 0}, {0, 0}});
  CMatrix block(4, 4);
  block(0, 1) = block(1, 0) = 1.0;
  CHECK(tensor(p0, X) == block);

  SeedableRng rng(5);
  const CMatrix a = oracle::random_matrix(2, 2, rng);
  const CMatrix b = oracle::random_matrix(3, 3, rng);
  CHECK(oracle::max_diff(tensor(a, b), oracle::kron(a, b)) <= 1e-15);
}

TEST_CASE("partial_trace") {
  const double s = 1.0 / std::sqrt(2.0);
  const CVector phi_plus{s, 0, 0, s};
  const std::size_t d22[] = {2, 2};
  const std::size_t keep0[] = {0};
  CHECK(max_abs_diff(partial_trace(CMatrix::outer(phi_plus, phi_plus), d22, keep0),
                     CMatrix::identity(2) * Cplx(0.5)) <= 1e-15);

  SeedableRng rng(6);
  const CMatrix a = oracle::random_matrix(2, 2, rng);
  const CMatrix b = oracle::random_matrix(3, 3, rng);
  const std::size_t d23[] = {2, 3};
  CHECK(max_abs_diff(partial_trace(tensor(a, b), d23, keep0), a * b.trace()) <= 1e-12);

  const CMatrix rho8 = oracle::random_hermitian(8, rng);
  const std::size_t d222[] = {2, 2, 2};
  const std::size_t keep02[] = {0, 2};
  CHECK(oracle::max_diff(partial_trace(rho8, d222, keep02), oracle::trace_middle_of_three_qubits(rho8)) <= 1e-13);
  // keep order is irrelevant; output follows factor order
  const std::size_t keep20[] = {2, 0};
  CHECK(partial_trace(rho8, d222, keep20) == partial_trace(rho8, d222, keep02));

  const std::size_t bad_dims[] = {2, 3};
  CHECK_THROWS_AS(partial_trace(rho8, bad_dims, keep0), DimensionError);
  const std::size_t bad_keep[] = {3};
  CHECK_THROWS_AS(partial_trace(rho8, d222, bad_keep), DimensionError);
  CHECK_THROWS_AS(partial_trace(CMatrix(2, 3), d23, keep0), DimensionError);
}

TEST_CASE("partial_trace: full trace in any order equals the trace") {
  SeedableRng rng(7);
  const std::size_t dims[] = {2, 3, 2};
  const CMatrix m = oracle::random_hermitian(12, rng);
  const std::size_t orders[][3] = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
  for (const auto& order : orders) {
    CMatrix cur = m;
    std::vector<std::size_t> live(dims, dims + 3);
    std::vector<std::size_t> ids = {0, 1, 2};
    for (std::size_t step = 0; step < 2; ++step) {
      const auto pos = std::find(ids.begin(), ids.end(), order[step]) - ids.begin();
      std::vector<std::size_t> keep;
      for (std::size_t f = 0; f < ids.size(); ++f)
        if (static_cast<std::ptrdiff_t>(f) != pos) keep.push_back(f);
      cur = partial_trace(cur, live, keep);
      live.erase(live.begin() + pos);
      ids.erase(ids.begin() + pos);
    }
    CHECK(std::abs(cur.trace() - m.trace()) <= 1e-12);
  }
}

TEST_CASE("herm_eig") {
  auto x = herm_eig(X);
  CHECK(x.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(x.values[1] == doctest::Approx(1.0).epsilon(1e-14));

  const double diag[] = {0.25, 0.75};
  auto d = herm_eig(CMatrix::diagonal(diag));
  CHECK(d.values[0] == 0.25);
  CHECK(d.values[1] == 0.75);

  SeedableRng rng(8);
  for (std::size_t n : {1u, 2u, 6u, 16u, 64u}) {
    const CMatrix h = oracle::random_hermitian(n, rng);
    const EigenSystem es = herm_eig(h);
    CHECK(std::is_sorted(es.values.begin(), es.values.end()));
    const CMatrix rec = matmul(matmul(es.vectors, CMatrix::diagonal(es.values)), dagger(es.vectors));
    CHECK(max_abs_diff(rec, h) <= 1e-10 * std::max(1.0, h.max_abs()));
    CHECK(max_abs_diff(matmul(dagger(es.vectors), es.vectors), CMatrix::identity(n)) <= 1e-10);
    const double sum = std::accumulate(es.values.begin(), es.values.end(), 0.0);
    CHECK(std::abs(sum - h.trace().real()) <= 1e-10 * static_cast<double>(n));
  }

  CHECK_THROWS_AS(herm_eig(CMatrix::from_rows({{0, 1}, {0, 0}})), ValidationError);
}

TEST_CASE("herm_eig: degenerate and rank-deficient spectra") {
  SeedableRng rng(9);
  // Projector of rank 2 in dimension 5, rotated by a random unitary.
  const CMatrix u = random_isometry(5, 5, rng);
  const double vals[] = {1, 1, 0, 0, 0};
  const CMatrix p = matmul(matmul(u, CMatrix::diagonal(vals)), dagger(u));
  const EigenSystem es = herm_eig(p);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(es.values[k]) <= 1e-12);
  for (std::size_t k = 3; k < 5; ++k) CHECK(std::abs(es.values[k] - 1.0) <= 1e-12);
  const CMatrix rec = matmul(matmul(es.vectors, CMatrix::diagonal(es.values)), dagger(es.vectors));
  CHECK(max_abs_diff(rec, p) <= 1e-10);
}

TEST_CASE("spectral_fn") {
  const auto sqrt_fn = [](double x) { return std::sqrt(x); };
  CHECK(max_abs_diff(spectral_fn(CMatrix::identity(4) * Cplx(0.25), sqrt_fn), CMatrix::identity(4) * Cplx(0.5)) <=
        1e-15);

  SeedableRng rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix g = oracle::random_matrix(4, 4, rng);
    const CMatrix a = matmul(g, dagger(g));
    const CMatrix s = spectral_fn(a, sqrt_fn);
    CHECK(max_abs_diff(matmul(s, s), a) <= 1e-9);
  }

  const CMatrix u = random_isometry(3, 3, rng);
  const double vals[] = {0, 1, 1};
  const CMatrix proj = matmul(matmul(u, CMatrix::diagonal(vals)), dagger(u));
  CHECK(max_abs_diff(spectral_fn(proj, sqrt_fn), proj) <= 1e-9);

  // Tiny negative noise is clamped; real negativity is an error.
  const double noisy[] = {-5e-11, 1.0};
  CHECK(spectral_fn(CMatrix::diagonal(noisy), sqrt_fn)(0, 0) == Cplx(0.0));
  const double negative[] = {-1e-6, 1.0};
  CHECK_THROWS_AS(spectral_fn(CMatrix::diagonal(negative), sqrt_fn), NumericalError);
  CHECK_NOTHROW(spectral_fn(CMatrix::diagonal(negative), [](double x) { return x; }, false));
}

TEST_CASE("properties: adjoint of a product and trace of a tensor product") {
  SeedableRng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 5, m = 1 + rng.next_u64() % 5, k = 1 + rng.next_u64() % 5;
    const CMatrix a = oracle::random_matrix(n, m, rng);
    const CMatrix b = oracle::random_matrix(m, k, rng);
    CHECK(max_abs_diff(dagger(matmul(a, b)), matmul(dagger(b), dagger(a))) <= 1e-12);

    const CMatrix sa = oracle::random_matrix(n, n, rng);
    const CMatrix sb = oracle::random_matrix(k, k, rng);
    CHECK(std::abs(tensor(sa, sb).trace() - sa.trace() * sb.trace()) <= 1e-12 * (1 + std::abs(sa.trace() * sb.trace())));
  }
}

TEST_CASE("CMatrix construction") {
  CHECK_THROWS_AS(CMatrix(2, 2, std::vector<Cplx>(3)), DimensionError);
  CMatrix m(2, 2);
  m(0, 0) = Cplx(std::nan(""), 0);
  CHECK_THROWS_AS(require_finite(m, "m"), ValidationError);
  CHECK_THROWS_AS(herm_eig(m), ValidationError);
}
