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

#include "qmi/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <sstream>

#include "qmi/kernels.hpp"

namespace qmi {

namespace {

struct CheckSpec {
  bool assertive;
  double tolerance;
  bool composes;  // builds e2*e1, so kraus_count^2 must fit the Kraus cap
};

const std::map<std::string, CheckSpec>& registry() {
  static const std::map<std::string, CheckSpec> r = {
      {"trivial", {true, 1e-9, false}},         {"araki_lieb", {true, 1e-7, false}},
      {"forward_dpi", {true, 1e-7, true}},      {"pure_mixed", {true, 1e-9, false}},
      {"separable", {true, 1e-8, false}},       {"entropy_exchange", {true, 1e-8, false}},
      {"fidelity", {true, 1e-9, false}},        {"reverse_claims", {false, 1e-7, true}},
  };
  return r;
}

const CheckSpec& spec_of(const std::string& check) {
  const auto it = registry().find(check);
  if (it == registry().end()) throw ConfigError("unknown check '" + check + "'");
  return it->second;
}

// Random input: pure when mixed_rank == 0.
struct Input {
  std::optional<PureState> pure;
  DensityMatrix rho;
};

Input draw_input(const SweepConfig& cfg, SeedableRng& rng) {
  if (cfg.mixed_rank == 0) {
    PureState psi = random_pure(cfg.dim, rng);
    DensityMatrix rho = DensityMatrix::from_pure(psi);
    return {std::move(psi), std::move(rho)};
  }
  return {std::nullopt, random_density(cfg.dim, cfg.mixed_rank, rng)};
}

MutualInfoResult info(const Input& in, const MeasurementBasis& basis, const KrausChannel& ch) {
  return in.pure ? mutual_information(*in.pure, basis, ch) : mutual_information(in.rho, basis, ch);
}

using Values = std::vector<std::pair<std::string, double>>;

// Each check fills `values` and returns the violation magnitude (>= 0).
double check_trivial(const SweepConfig& cfg, SeedableRng& rng, Values& v) {
  const Input in = draw_input(cfg, rng);
  const MeasurementBasis basis = random_basis(cfg.dim, rng);
  const auto r = info(in, basis, channels::identity(cfg.dim));
  const double s_m = measured_information(in.rho, basis);
  v = {{"mutual_information", r.mutual_information}, {"measured_entropy_in", s_m},
       {"joint_entropy_out", r.joint_entropy_out}};
  return std::abs(r.mutual_information - s_m);
}

double check_araki_lieb(const SweepConfig& cfg, SeedableRng& rng, Values& v) {
  const Input in = draw_input(cfg, rng);
  const MeasurementBasis basis = random_basis(cfg.dim, rng);
  const KrausChannel ch = channels::random(cfg.dim, cfg.kraus_count, rng);
  const auto r = info(in, basis, ch);
  v = {{"mutual_information", r.mutual_information}, {"measured_entropy_in", r.measured_entropy_in}};
  return std::max(0.0, r.mutual_information - r.measured_entropy_in);
}

double check_forward_dpi(const SweepConfig& cfg, SeedableRng& rng, Values& v) {
  const Input in = draw_input(cfg, rng);
  const MeasurementBasis basis = random_basis(cfg.dim, rng);
  const KrausChannel e1 = channels::random(cfg.dim, cfg.kraus_count, rng);
  const KrausChannel e2 = channels::random(cfg.dim, cfg.kraus_count, rng);
  const auto r1 = info(in, basis, e1);
  const auto r21 = info(in, basis, compose(e2, e1));
  v = {{"I_e1", r1.mutual_information},
       {"I_e2_e1", r21.mutual_information},
       {"measured_entropy_in", r1.measured_entropy_in}};
  return std::max({0.0, r21.mutual_information - r1.mutual_information,
                   r1.mutual_information - r1.measured_entropy_in});
}

double check_pure_mixed(const SweepConfig& cfg, SeedableRng& rng, Values& v) {
  const PureState psi = random_pure(cfg.dim, rng);
  const MeasurementBasis basis = random_basis(cfg.dim, rng);
  const KrausChannel ch = channels::random(cfg.dim, cfg.kraus_count, rng);
  const auto pure = mutual_information(psi, basis, ch);
  const auto mixed = mutual_information(dephase(DensityMatrix::from_pure(psi), basis), basis, ch);
  v = {{"I_pure", pure.mutual_information}, {"I_mixed", mixed.mutual_information}};
  return std::abs(pure.mutual_information - mixed.mutual_information);
}

double check_separable(const SweepConfig& cfg, SeedableRng& rng, Values& v) {
  const MeasurementBasis basis = random_basis(cfg.dim, rng);
  std::vector<double> w(cfg.dim);
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  for (auto& x : w) x /= sum;
  std::vector<DensityMatrix> members;
  for (std::size_t i = 0; i < cfg.dim; ++i) {
    const CVector phi = basis.vector(i);
    members.emplace_back(CMatrix::outer(phi, phi));
  }
  const Ensemble ens(std::move(w), std::move(members));
  const KrausChannel ch = channels::random(cfg.dim, cfg.kraus_count, rng);
  const auto sep = separable_mutual_information(ens, ch);
  const double chi = holevo_reduction(ens, ch);
  v = {{"separable", sep.mutual_information}, {"holevo", chi}, {"unmeasured_change", sep.unmeasured_change}};
  return std::abs(sep.mutual_information - chi);
}

double check_entropy_exchange(const SweepConfig& cfg, SeedableRng& rng, Values& v) {
  const Input in = draw_input(cfg, rng);
  const MeasurementBasis basis = random_basis(cfg.dim, rng);
  const KrausChannel ch = channels::random(cfg.dim, cfg.kraus_count, rng);
  const auto r = info(in, basis, ch);
  const double w = entropy_exchange_crosscheck(dephase(in.rho, basis), ch);
  v = {{"joint_entropy_out", r.joint_entropy_out}, {"entropy_exchange", w}};
  return std::abs(r.joint_entropy_out - w);
}

double check_fidelity(const SweepConfig& cfg, SeedableRng& rng, Values& v) {
  const std::size_t rank = cfg.mixed_rank == 0 ? cfg.dim : cfg.mixed_rank;
  const DensityMatrix rho = random_density(cfg.dim, rank, rng);
  const DensityMatrix sigma = random_density(cfg.dim, rank, rng);
  const PureState psi = random_pure(cfg.dim, rng);
  const PureState phi = random_pure(cfg.dim, rng);
  const DensityMatrix psi_m = DensityMatrix::from_pure(psi);
  const DensityMatrix phi_m = DensityMatrix::from_pure(phi);

  const double self = fidelity_uhlmann(rho, rho);
  const double pure_pure = fidelity_uhlmann(psi_m, phi_m);
  const double overlap = std::norm(inner(psi.amplitudes(), phi.amplitudes()));
  const double pure_mixed = fidelity_uhlmann(psi_m, sigma);
  const double closed = inner(psi.amplitudes(), matvec(sigma.mat(), psi.amplitudes())).real();
  const double f_rs = fidelity_uhlmann(rho, sigma);
  const double f_sr = fidelity_uhlmann(sigma, rho);
  v = {{"self", self},           {"pure_pure", pure_pure}, {"overlap_sq", overlap},
       {"pure_mixed", pure_mixed}, {"closed_form", closed}, {"F_rho_sigma", f_rs},
       {"F_sigma_rho", f_sr}};
  return std::max({std::abs(self - 1.0), std::abs(pure_pure - overlap), std::abs(pure_mixed - closed),
                   std::abs(f_rs - f_sr)});
}

double check_reverse_claims(const SweepConfig& cfg, SeedableRng& rng, Values& v) {
  const Input in = draw_input(cfg, rng);
  const MeasurementBasis basis = random_basis(cfg.dim, rng);
  const KrausChannel e1 = channels::random(cfg.dim, cfg.kraus_count, rng);
  const KrausChannel e2 = channels::random(cfg.dim, cfg.kraus_count, rng);
  const DensityMatrix rho_m = dephase(in.rho, basis);
  const double i21 = mutual_information(rho_m, basis, compose(e2, e1)).mutual_information;
  const double i12 = mutual_information(rho_m, basis, compose(e1, e2)).mutual_information;
  const double i2 = mutual_information(rho_m, basis, e2).mutual_information;
  const double i1 = mutual_information(rho_m, basis, e1).mutual_information;
  double adj_trace = 0.0;
  const double i1_rev = reverse_manner_information(rho_m, basis, e1, &adj_trace);
  v = {{"order_difference", i21 - i12},
       {"composite_minus_second", i21 - i2},
       {"forward_minus_reverse", i1 - i1_rev},
       {"adjoint_trace", adj_trace}};
  return std::max({std::abs(i21 - i12), std::max(0.0, i21 - i2), std::abs(i1 - i1_rev)});
}

using CheckFn = double (*)(const SweepConfig&, SeedableRng&, Values&);

CheckFn check_fn(const std::string& check) {
  static const std::map<std::string, CheckFn> fns = {
      {"trivial", check_trivial},           {"araki_lieb", check_araki_lieb},
      {"forward_dpi", check_forward_dpi},   {"pure_mixed", check_pure_mixed},
      {"separable", check_separable},       {"entropy_exchange", check_entropy_exchange},
      {"fidelity", check_fidelity},         {"reverse_claims", check_reverse_claims},
  };
  return fns.at(check);
}

// Which recorded values count as a violation for the exploratory statistics.
bool exploratory_violates(const std::string& name, double x, double tol) {
  if (name == "order_difference" || name == "forward_minus_reverse") return std::abs(x) > tol;
  if (name == "composite_minus_second") return x > tol;
  return false;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"trivial",          "araki_lieb", "forward_dpi", "pure_mixed",
                                                 "separable",        "entropy_exchange", "fidelity",
                                                 "reverse_claims"};
  return names;
}

bool is_assertive(const std::string& check) { return spec_of(check).assertive; }

double default_tolerance(const std::string& check) { return spec_of(check).tolerance; }

void validate(const SweepConfig& cfg) {
  const CheckSpec& spec = spec_of(cfg.check);
  if (cfg.instances == 0) throw ConfigError("instances must be at least 1");
  if (cfg.dim == 0) throw ConfigError("dim must be at least 1");
  if (cfg.dim * cfg.dim > max_composite_dim()) {
    throw ConfigError("dim " + std::to_string(cfg.dim) + " gives composite dimension " +
                      std::to_string(cfg.dim * cfg.dim) + " above cap " + std::to_string(max_composite_dim()));
  }
  if (cfg.kraus_count == 0 || cfg.kraus_count > kDefaultKrausCap) {
    throw ConfigError("kraus count must be in [1, " + std::to_string(kDefaultKrausCap) + "]");
  }
  if (spec.composes && cfg.kraus_count * cfg.kraus_count > kDefaultKrausCap) {
    throw ConfigError("check '" + cfg.check + "' composes channels; kraus count " + std::to_string(cfg.kraus_count) +
                      " squared exceeds cap " + std::to_string(kDefaultKrausCap));
  }
  if (cfg.mixed_rank > cfg.dim) throw ConfigError("mixed rank exceeds dim");
  if (cfg.tolerance && !(*cfg.tolerance >= 0.0)) throw ConfigError("tolerance must be nonnegative");
}

std::uint64_t instance_seed(const SweepConfig& cfg, std::size_t index) { return mix_seed(cfg.seed, index); }

InstanceRecord run_instance(const SweepConfig& cfg, std::uint64_t seed, std::size_t index) {
  validate(cfg);
  const double tol = cfg.tolerance.value_or(default_tolerance(cfg.check));
  SeedableRng rng(seed);
  InstanceRecord rec;
  rec.index = index;
  rec.seed = seed;
  rec.violation = check_fn(cfg.check)(cfg, rng, rec.values);
  rec.passed = rec.violation <= tol;
  return rec;
}

SweepReport run_check(const SweepConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = cfg.instances;
  std::vector<InstanceRecord> records(n);
  std::vector<std::exception_ptr> errors(n);

  const auto body = [&](std::size_t i) {
    try {
      records[i] = run_instance(cfg, instance_seed(cfg, i), i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (cfg.parallel) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SweepReport rep;
  rep.check = cfg.check;
  rep.assertive = is_assertive(cfg.check);
  rep.config = cfg;
  rep.tolerance = cfg.tolerance.value_or(default_tolerance(cfg.check));
  rep.instances_run = n;
  rep.worst_index = 0;
  rep.worst_seed = records.front().seed;
  for (const auto& r : records) {
    (r.passed ? rep.pass_count : rep.fail_count)++;
    if (r.violation > rep.max_violation) {
      rep.max_violation = r.violation;
      rep.worst_index = r.index;
      rep.worst_seed = r.seed;
    }
  }
  if (!rep.assertive) {
    for (std::size_t q = 0; q < records.front().values.size(); ++q) {
      QuantityStats st;
      st.name = records.front().values[q].first;
      st.min = st.max = records.front().values[q].second;
      double sum = 0.0;
      std::size_t bad = 0;
      for (const auto& r : records) {
        const double x = r.values[q].second;
        st.min = std::min(st.min, x);
        st.max = std::max(st.max, x);
        st.max_abs = std::max(st.max_abs, std::abs(x));
        sum += x;
        if (exploratory_violates(st.name, x, rep.tolerance)) ++bad;
      }
      st.mean = sum / static_cast<double>(n);
      st.violation_fraction = static_cast<double>(bad) / static_cast<double>(n);
      rep.statistics.push_back(std::move(st));
    }
  }
  rep.records = std::move(records);
  rep.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

double reverse_manner_information(const DensityMatrix& rho, const MeasurementBasis& basis, const KrausChannel& ch,
                                  double* trace_out) {
  if (ch.dim_in() != ch.dim_out()) throw DimensionError("reverse_manner_information: channel must be square");
  const JointState joint = pointer_entangle_mixed(rho, basis);
  const std::size_t d = basis.dim();
  const CMatrix& m = joint.mat();
  CMatrix swapped(d * d, d * d);
  for (std::size_t is = 0; is < d; ++is)
    for (std::size_t ip = 0; ip < d; ++ip)
      for (std::size_t js = 0; js < d; ++js)
        for (std::size_t jp = 0; jp < d; ++jp) swapped(ip * d + is, jp * d + js) = m(is * d + ip, js * d + jp);

  const AdjointMap adj = adjoint_channel(ch);
  const std::size_t dims[] = {d, d};
  const auto big = extend_kraus(adj.kraus(), dims, 1);
  CMatrix out = kernels::kraus_sum(big, swapped);
  const double tr = out.trace().real();
  if (trace_out) *trace_out = tr;
  if (!(tr > 0.0)) throw NumericalError("reverse_manner_information: adjoint output has zero trace");
  out = (out + dagger(out)) * Cplx(0.5 / tr);
  const std::size_t keep[] = {1};
  return spectrum_entropy(partial_trace(out, dims, keep)) - spectrum_entropy(out);
}

bool SuiteReport::passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const SweepReport& r) { return r.passed(); });
}

std::vector<SweepConfig> default_suite(std::uint64_t master_seed) {
  auto cfg = [&](std::string check, std::size_t n, std::size_t d, std::size_t k, std::size_t rank) {
    SweepConfig c;
    c.check = std::move(check);
    c.instances = n;
    c.dim = d;
    c.kraus_count = k;
    c.mixed_rank = rank;
    c.seed = master_seed;
    return c;
  };
  return {
      cfg("trivial", 100, 2, 1, 0),         cfg("trivial", 100, 3, 1, 2),
      cfg("trivial", 100, 4, 1, 4),         cfg("araki_lieb", 200, 2, 2, 0),
      cfg("araki_lieb", 200, 3, 3, 2),      cfg("araki_lieb", 200, 4, 4, 3),
      cfg("forward_dpi", 500, 2, 2, 0),     cfg("forward_dpi", 200, 3, 3, 2),
      cfg("pure_mixed", 200, 3, 2, 0),      cfg("separable", 200, 2, 2, 0),
      cfg("separable", 200, 3, 3, 0),       cfg("entropy_exchange", 200, 4, 3, 2),
      cfg("fidelity", 100, 3, 1, 0),        cfg("reverse_claims", 500, 2, 2, 0),
  };
}

SuiteReport run_suite(const std::vector<SweepConfig>& configs, std::uint64_t master_seed) {
  for (const auto& c : configs) validate(c);
  SuiteReport suite;
  suite.master_seed = master_seed;
  for (const auto& c : configs) suite.reports.push_back(run_check(c));
  return suite;
}

nlohmann::ordered_json to_json(const SweepConfig& cfg) {
  nlohmann::ordered_json j;
  j["check"] = cfg.check;
  j["instances"] = cfg.instances;
  j["dim"] = cfg.dim;
  j["kraus_count"] = cfg.kraus_count;
  j["mixed_rank"] = cfg.mixed_rank;
  j["seed"] = cfg.seed;
  j["tolerance"] = cfg.tolerance ? nlohmann::ordered_json(*cfg.tolerance) : nlohmann::ordered_json(nullptr);
  return j;
}

nlohmann::ordered_json to_json(const SweepReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["assertive"] = r.assertive;
  j["config"] = to_json(r.config);
  j["tolerance"] = r.tolerance;
  j["instances_run"] = r.instances_run;
  j["pass_count"] = r.pass_count;
  j["fail_count"] = r.fail_count;
  j["max_violation"] = r.max_violation;
  j["worst_instance_index"] = r.worst_index;
  j["worst_instance_seed"] = r.worst_seed;
  j["passed"] = r.passed();
  if (!r.statistics.empty()) {
    auto& stats = j["statistics"] = nlohmann::ordered_json::array();
    for (const auto& s : r.statistics) {
      stats.push_back({{"name", s.name},
                       {"min", s.min},
                       {"max", s.max},
                       {"mean", s.mean},
                       {"max_abs", s.max_abs},
                       {"violation_fraction", s.violation_fraction}});
    }
  }
  if (r.config.verbose) {
    auto& recs = j["records"] = nlohmann::ordered_json::array();
    for (const auto& rec : r.records) {
      nlohmann::ordered_json values;
      for (const auto& [k, v] : rec.values) values[k] = v;
      recs.push_back({{"index", rec.index},
                      {"seed", rec.seed},
                      {"passed", rec.passed},
                      {"violation", rec.violation},
                      {"values", values}});
    }
  }
  if (include_timing) j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j;
}

nlohmann::ordered_json to_json(const SuiteReport& s, bool include_timing) {
  nlohmann::ordered_json j;
  j["master_seed"] = s.master_seed;
  j["passed"] = s.passed();
  auto& reps = j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : s.reports) reps.push_back(to_json(r, include_timing));
  return j;
}

std::string records_csv(const SweepReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "index,seed,passed,violation";
  if (!r.records.empty())
    for (const auto& [k, v] : r.records.front().values) os << ',' << k;
  os << '\n';
  for (const auto& rec : r.records) {
    os << rec.index << ',' << rec.seed << ',' << (rec.passed ? 1 : 0) << ',' << rec.violation;
    for (const auto& [k, v] : rec.values) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace qmi
