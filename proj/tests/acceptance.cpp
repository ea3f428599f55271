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


#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qmi/verifier.hpp"

using namespace qmi;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

SweepConfig make(const std::string& check, std::size_t n, std::size_t d, std::size_t k, std::size_t rank,
                 std::uint64_t seed) {
  SweepConfig c;
  c.check = check;
  c.instances = n;
  c.dim = d;
  c.kraus_count = k;
  c.mixed_rank = rank;
  c.seed = seed;
  return c;
}

// Runs every config at its default tolerance and folds the reports together.
Outcome sweeps(const std::vector<SweepConfig>& configs, double tol) {
  Outcome o;
  std::size_t total = 0, passed = 0;
  double worst = 0.0;
  for (auto c : configs) {
    c.tolerance = tol;
    const auto r = run_check(c);
    total += r.instances_run;
    passed += r.pass_count;
    worst = std::max(worst, r.max_violation);
    if (!r.passed()) o.ok = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/%zu instances, max violation %.3e (tol %.0e)", passed, total, worst, tol);
  o.detail = buf;
  return o;
}

double binary_entropy(double p) {
  auto eta = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return eta(p) + eta(1.0 - p);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string without_timing(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("wall_clock_seconds") == std::string::npos) out += line + '\n';
  return out;
}

Outcome trivial() {
  std::vector<SweepConfig> cs;
  for (std::size_t d : {2, 3, 4}) {
    cs.push_back(make("trivial", 100, d, 1, 0, 101));
    cs.push_back(make("trivial", 100, d, 1, d, 102));
  }
  return sweeps(cs, 1e-9);
}

Outcome araki_lieb() {
  std::vector<SweepConfig> cs;
  for (std::size_t d : {2, 3, 4})
    for (std::size_t k : {1, 2, 3, 4}) cs.push_back(make("araki_lieb", 500, d, k, (k % 2) ? 0 : d, 200 + d * 10 + k));
  return sweeps(cs, 1e-7);
}

Outcome forward_dpi() {
  return sweeps({make("forward_dpi", 500, 2, 2, 0, 301), make("forward_dpi", 500, 2, 4, 2, 302),
                 make("forward_dpi", 500, 3, 2, 0, 303), make("forward_dpi", 500, 3, 3, 3, 304)},
                1e-7);
}

Outcome pure_mixed() {
  return sweeps({make("pure_mixed", 200, 2, 2, 0, 401), make("pure_mixed", 200, 3, 3, 0, 402),
                 make("pure_mixed", 200, 4, 4, 0, 403)},
                1e-9);
}

Outcome separable() {
  Outcome o = sweeps({make("separable", 200, 2, 2, 0, 501), make("separable", 200, 3, 3, 0, 502),
                      make("separable", 200, 4, 4, 0, 503)},
                     1e-8);
  const Ensemble ens({0.5, 0.5}, {DensityMatrix::from_pure(PureState::basis_state(2, 0)),
                                  DensityMatrix::from_pure(PureState::basis_state(2, 1))});
  const double expected[] = {1.0, 0.188722, 0.0};
  const double ps[] = {0.0, 0.5, 1.0};
  std::string curve;
  for (int i = 0; i < 3; ++i) {
    const double chi = holevo_reduction(ens, channels::depolarizing(ps[i]));
    const double sep = separable_mutual_information(ens, channels::depolarizing(ps[i])).mutual_information;
    const double oracle = 1.0 - binary_entropy(ps[i] / 2.0);
    if (std::abs(chi - expected[i]) > 1e-6 || std::abs(chi - oracle) > 1e-6 || std::abs(sep - expected[i]) > 1e-6)
      o.ok = false;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.6f", i ? ", " : "; chi(p) = ", chi);
    curve += buf;
  }
  o.detail += curve;
  return o;
}

Outcome endpoints() {
  const double s = 1.0 / std::sqrt(2.0);
  const PureState plus({s, s});
  const auto basis = MeasurementBasis::computational(2);
  const double deph = mutual_information(plus, basis, channels::dephasing(1.0)).mutual_information;
  const double dep = mutual_information(plus, basis, channels::depolarizing(1.0)).mutual_information;
  // spectrum of the depolarized joint state: {1 - 3p/4, p/4, p/4, p/4} at p = 1
  const double oracle = 1.0 - 4.0 * (-0.25 * std::log2(0.25));
  Outcome o;
  o.ok = std::abs(deph) <= 1e-9 && std::abs(dep + 1.0) <= 1e-9 && std::abs(dep - oracle) <= 1e-9;
  char buf[128];
  std::snprintf(buf, sizeof buf, "dephasing(1) I = %.3e, depolarizing(1) I = %.12f", deph, dep);
  o.detail = buf;
  return o;
}

Outcome dual_path() {
  return sweeps({make("entropy_exchange", 200, 2, 2, 0, 701), make("entropy_exchange", 200, 3, 3, 2, 702),
                 make("entropy_exchange", 200, 4, 4, 4, 703)},
                1e-8);
}

Outcome fidelity() {
  return sweeps({make("fidelity", 100, 2, 1, 0, 801), make("fidelity", 100, 3, 1, 2, 802),
                 make("fidelity", 100, 4, 1, 0, 803)},
                1e-9);
}

Outcome reverse_claims() {
  const auto c = make("reverse_claims", 500, 2, 2, 0, 901);
  const auto a = run_check(c);
  const auto b = run_check(c);
  Outcome o;
  bool finite = a.statistics.size() == 4;
  for (const auto& st : a.statistics) finite = finite && std::isfinite(st.mean) && std::isfinite(st.max_abs);
  const bool same = to_json(a, false).dump() == to_json(b, false).dump();
  o.ok = a.instances_run == 500 && a.passed() && finite && same;
  std::ostringstream os;
  os << a.instances_run << " instances, deterministic=" << (same ? "yes" : "no") << ";";
  for (const auto& st : a.statistics) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " %s violated in %.1f%%", st.name.c_str(), 100.0 * st.violation_fraction);
    if (st.name != "adjoint_trace") os << buf;
  }
  o.detail = os.str();
  return o;
}

Outcome determinism() {
  Outcome o;
  std::vector<std::string> runs;
  for (int i = 0; i < 2; ++i) {
    const std::string out = "acceptance_sweep_" + std::to_string(i) + ".json";
    const std::string cmd = std::string(QMI_CLI_PATH) +
                            " sweep forward_dpi --instances 200 --dim 3 --seed 42 --verbose > " + out + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) o.ok = false;
    runs.push_back(slurp(out));
  }
  const bool timed = runs[0].find("wall_clock_seconds") != std::string::npos;
  o.ok = o.ok && !runs[0].empty() && timed && without_timing(runs[0]) == without_timing(runs[1]);
  o.detail = std::to_string(runs[0].size()) + " bytes per report, identical after removing timing: " +
             (without_timing(runs[0]) == without_timing(runs[1]) ? "yes" : "no");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;  // 0: no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"trivial-channel identity", 5.0, trivial},
      {"Araki-Lieb bound", 30.0, araki_lieb},
      {"forward data processing", 60.0, forward_dpi},
      {"pure/mixed equivalence", 0.0, pure_mixed},
      {"separable reduction", 0.0, separable},
      {"closed-form endpoints", 0.0, endpoints},
      {"dual-path joint entropy", 0.0, dual_path},
      {"fidelity suite", 0.0, fidelity},
      {"reverse-claims statistics", 0.0, reverse_claims},
      {"sweep determinism", 0.0, determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].limit_seconds > 0.0 && secs >= criteria[i].limit_seconds) o.ok = false;
    if (!o.ok) ++failures;
    std::printf("%s  %2zu %-28s %7.3fs  %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
