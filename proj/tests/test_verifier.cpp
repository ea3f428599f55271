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


#include <cmath>
#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "qmi/verifier.hpp"

using namespace qmi;

namespace {

SweepConfig config(const std::string& check, std::size_t n = 60, std::size_t d = 2, std::size_t k = 2,
                   std::size_t rank = 0) {
  SweepConfig c;
  c.check = check;
  c.instances = n;
  c.dim = d;
  c.kraus_count = k;
  c.mixed_rank = rank;
  c.seed = 11;
  return c;
}

}  // namespace

TEST_CASE("every assertive check passes on random instances") {
  for (const auto& name : check_names()) {
    if (!is_assertive(name)) continue;
    for (std::size_t d : {2u, 3u}) {
      for (std::size_t rank : {0u, 2u}) {
        CAPTURE(name);
        CAPTURE(d);
        CAPTURE(rank);
        const auto r = run_check(config(name, 40, d, 2, rank));
        CHECK(r.passed());
        CHECK(r.instances_run == 40);
        CHECK(r.pass_count == 40);
        CHECK(r.max_violation <= r.tolerance);
        CHECK(r.statistics.empty());
      }
    }
  }
}

TEST_CASE("registry") {
  CHECK(check_names().size() == 8);
  CHECK_FALSE(is_assertive("reverse_claims"));
  CHECK(is_assertive("trivial"));
  CHECK(default_tolerance("trivial") == 1e-9);
  CHECK(default_tolerance("forward_dpi") == 1e-7);
  CHECK(default_tolerance("separable") == 1e-8);
  CHECK_THROWS_AS(is_assertive("nope"), ConfigError);
}

TEST_CASE("runs are deterministic across repeats and execution modes") {
  for (const auto& name : check_names()) {
    CAPTURE(name);
    auto c = config(name, 30, 2, 2, 0);
    c.verbose = true;
    const auto a = to_json(run_check(c), false).dump();
    const auto b = to_json(run_check(c), false).dump();
    c.parallel = false;
    const auto s = to_json(run_check(c), false).dump();
    CHECK(a == b);
    CHECK(a == s);
  }
  auto c = config("trivial");
  const auto j = to_json(run_check(c), false);
  CHECK_FALSE(j.contains("wall_clock_seconds"));
  CHECK_FALSE(j.contains("records"));
  CHECK(to_json(run_check(c), true).contains("wall_clock_seconds"));
  c.seed = 12;
  CHECK(to_json(run_check(c), false)["max_violation"] != j["max_violation"]);
}

TEST_CASE("worst instance reproduces from its seed") {
  for (const auto& name : {"forward_dpi", "entropy_exchange", "fidelity", "reverse_claims"}) {
    CAPTURE(name);
    const auto c = config(name, 50, 3, 2, 2);
    const auto r = run_check(c);
    const auto again = run_instance(c, r.worst_seed, r.worst_index);
    CHECK(std::abs(again.violation - r.max_violation) <= 1e-12);
    CHECK(r.worst_seed == instance_seed(c, r.worst_index));
    CHECK(r.records.at(r.worst_index).violation == r.max_violation);
  }
}

TEST_CASE("failures are counted against a zero tolerance") {
  auto c = config("araki_lieb", 50, 3, 3, 2);
  c.tolerance = -0.0;
  CHECK(run_check(c).passed());
  c = config("pure_mixed", 50, 3);
  c.tolerance = 0.0;
  const auto r = run_check(c);
  CHECK(r.pass_count + r.fail_count == 50);
  CHECK(r.passed() == (r.fail_count == 0));
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(run_check(config("unknown")), ConfigError);
  CHECK_THROWS_AS(run_check(config("trivial", 0)), ConfigError);
  CHECK_THROWS_AS(run_check(config("trivial", 10, 9)), ConfigError);
  CHECK_THROWS_AS(run_check(config("trivial", 10, 2, 0)), ConfigError);
  CHECK_THROWS_AS(run_check(config("trivial", 10, 2, 17)), ConfigError);
  CHECK_THROWS_AS(run_check(config("forward_dpi", 10, 2, 5)), ConfigError);
  CHECK_THROWS_AS(run_check(config("trivial", 10, 2, 2, 3)), ConfigError);
  auto c = config("trivial");
  c.tolerance = -1.0;
  CHECK_THROWS_AS(run_check(c), ConfigError);
  CHECK_NOTHROW(validate(config("trivial", 10, 8, 16)));
}

TEST_CASE("reverse_claims is exploratory and reports statistics") {
  const auto r = run_check(config("reverse_claims", 80));
  CHECK(r.passed());
  CHECK_FALSE(r.assertive);
  REQUIRE(r.statistics.size() == 4);
  for (const auto& s : r.statistics) {
    CHECK(s.min <= s.mean);
    CHECK(s.mean <= s.max);
    CHECK((s.violation_fraction >= 0.0 && s.violation_fraction <= 1.0));
  }
  CHECK(r.statistics[0].name == "order_difference");
  CHECK(to_json(r, false).contains("statistics"));
}

TEST_CASE("composing a channel with itself has no order dependence") {
  SeedableRng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto e = channels::random(2, 2, rng);
    const auto rho = dephase(random_density(2, 2, rng), MeasurementBasis::computational(2));
    const auto basis = MeasurementBasis::computational(2);
    CHECK(mutual_information(rho, basis, compose(e, e)).mutual_information -
              mutual_information(rho, basis, compose(e, e)).mutual_information ==
          0.0);
  }
}

TEST_CASE("reverse_manner_information") {
  const auto basis = MeasurementBasis::computational(2);
  const auto rho = DensityMatrix::maximally_mixed(2);
  double tr = 0.0;
  const double i = reverse_manner_information(rho, basis, channels::identity(2), &tr);
  CHECK(std::abs(tr - 1.0) <= 1e-12);
  CHECK(std::abs(i - mutual_information(rho, basis, channels::identity(2)).mutual_information) <= 1e-12);
  // unital channels have a trace-preserving adjoint
  SeedableRng rng(62);
  reverse_manner_information(rho, basis, channels::random(2, 3, rng), &tr);
  CHECK(std::isfinite(tr));
  CHECK(tr > 0.0);
}

TEST_CASE("suites") {
  const auto empty = run_suite({}, 3);
  CHECK(empty.passed());
  CHECK(to_json(empty, false)["reports"].empty());

  const auto one = run_suite({config("trivial", 20)}, 3);
  CHECK(one.passed());
  CHECK(one.reports.size() == 1);
  CHECK_THROWS_AS(run_suite({config("trivial"), config("bad")}), ConfigError);

  const auto suite = default_suite(7);
  CHECK(suite.size() >= check_names().size());
  for (const auto& c : suite) CHECK_NOTHROW(validate(c));
}

TEST_CASE("records_csv") {
  auto c = config("trivial", 5);
  const auto r = run_check(c);
  const std::string csv = records_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "index,seed,passed,violation,mutual_information,measured_entropy_in,joint_entropy_out");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == 5);
}
