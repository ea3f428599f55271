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

#include "qmi/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qmi {

using Json = nlohmann::ordered_json;

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path + ": " + what); }

Cplx parse_cplx(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(path, "expected a number or an [re, im] pair");
}

CVector parse_vector(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of complex entries");
  CVector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_cplx(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

// Array of rows.
CMatrix parse_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  std::vector<CVector> rows;
  for (std::size_t r = 0; r < j.size(); ++r) rows.push_back(parse_vector(j[r], path + "[" + std::to_string(r) + "]"));
  const std::size_t cols = rows.front().size();
  CMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(path, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Json cplx_json(Cplx z) { return Json::array({z.real(), z.imag()}); }

Json vector_json(std::span<const Cplx> v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(cplx_json(z));
  return a;
}

Json matrix_json(const CMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(cplx_json(m(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

template <typename F>
auto with_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const DimensionError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::variant<PureState, DensityMatrix> parse_state(const Json& j) {
  if (!j.is_object()) fail("state", "expected an object with 'pure' or 'density'");
  if (j.contains("pure")) {
    CVector v = parse_vector(j["pure"], "state.pure");
    return with_path("state", [&] { return PureState(std::move(v)); });
  }
  if (j.contains("density")) {
    CMatrix m = parse_matrix(j["density"], "state.density");
    return with_path("state", [&] { return DensityMatrix(std::move(m)); });
  }
  fail("state", "expected 'pure' or 'density'");
}

MeasurementBasis parse_basis(const Json& j, std::size_t dim) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "computational") return MeasurementBasis::computational(dim);
    if (name == "hadamard") return MeasurementBasis::hadamard(dim);
    fail("basis", "unknown basis name '" + name + "'");
  }
  if (j.is_object() && j.contains("columns")) {
    const Json& cols = j["columns"];
    if (!cols.is_array() || cols.size() != dim) fail("basis.columns", "expected " + std::to_string(dim) + " columns");
    CMatrix m(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
      const CVector v = parse_vector(cols[c], "basis.columns[" + std::to_string(c) + "]");
      if (v.size() != dim) fail("basis.columns[" + std::to_string(c) + "]", "expected length " + std::to_string(dim));
      for (std::size_t r = 0; r < dim; ++r) m(r, c) = v[r];
    }
    return with_path("basis", [&] { return MeasurementBasis(std::move(m)); });
  }
  fail("basis", "expected \"computational\", \"hadamard\" or {\"columns\": [...]}");
}

double param(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) fail("channel", std::string("missing numeric parameter '") + key + "'");
  return j[key].get<double>();
}

KrausChannel parse_channel(const Json& j, std::size_t dim) {
  if (j.is_string()) return parse_channel(Json{{"name", j}}, dim);
  if (!j.is_object()) fail("channel", "expected an object");
  if (j.contains("kraus")) {
    const Json& ks = j["kraus"];
    if (!ks.is_array() || ks.empty()) fail("channel.kraus", "expected a nonempty array of matrices");
    std::vector<CMatrix> mats;
    for (std::size_t k = 0; k < ks.size(); ++k) mats.push_back(parse_matrix(ks[k], "channel.kraus[" + std::to_string(k) + "]"));
    const std::string label = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "kraus";
    return with_path("channel", [&] { return KrausChannel(std::move(mats), label); });
  }
  if (!j.contains("name") || !j["name"].is_string()) fail("channel", "expected 'name' or 'kraus'");
  const auto name = j["name"].get<std::string>();
  return with_path("channel", [&]() -> KrausChannel {
    if (name == "identity") {
      const std::size_t d = j.contains("dim") ? j["dim"].get<std::size_t>() : dim;
      return channels::identity(d);
    }
    if (name == "unitary") {
      if (!j.contains("matrix")) fail("channel", "unitary needs 'matrix'");
      return channels::unitary(parse_matrix(j["matrix"], "channel.matrix"));
    }
    if (name == "depolarizing") return channels::depolarizing(param(j, "p"));
    if (name == "dephasing") return channels::dephasing(param(j, "lambda"));
    if (name == "amplitude_damping") return channels::amplitude_damping(param(j, "gamma"));
    if (name == "bit_flip") return channels::bit_flip(param(j, "p"));
    fail("channel", "unknown channel name '" + name + "'");
  });
}

Ensemble parse_ensemble(const Json& j) {
  if (!j.is_object() || !j.contains("weights") || !j.contains("members")) {
    fail("ensemble", "expected {\"weights\": [...], \"members\": [...]}");
  }
  const Json& w = j["weights"];
  const Json& m = j["members"];
  if (!w.is_array() || !m.is_array()) fail("ensemble", "weights and members must be arrays");
  std::vector<double> weights;
  for (const auto& x : w) {
    if (!x.is_number()) fail("ensemble.weights", "expected numbers");
    weights.push_back(x.get<double>());
  }
  std::vector<DensityMatrix> members;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::string path = "ensemble.members[" + std::to_string(i) + "]";
    CMatrix mat = parse_matrix(m[i], path);
    members.push_back(with_path(path, [&] { return DensityMatrix(std::move(mat)); }));
  }
  return with_path("ensemble", [&] { return Ensemble(std::move(weights), std::move(members)); });
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string fixed9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

double binary_entropy(double p) {
  auto eta = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return eta(p) + eta(1.0 - p);
}

}  // namespace

DensityMatrix Scenario::density() const {
  if (const auto* psi = std::get_if<PureState>(&state)) return DensityMatrix::from_pure(*psi);
  return std::get<DensityMatrix>(state);
}

Scenario parse_scenario(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw ParseError(line, col, e.what());
  }
  if (!j.is_object()) throw ValidationError("scenario: top level must be an object");
  if (!j.contains("state")) fail("scenario", "missing 'state'");
  auto state = parse_state(j["state"]);
  const std::size_t dim = std::visit([](const auto& s) { return s.dim(); }, state);
  MeasurementBasis basis = parse_basis(j.contains("basis") ? j["basis"] : Json("computational"), dim);
  if (basis.dim() != dim) fail("basis", "dimension does not match the state");
  if (!j.contains("channel")) fail("scenario", "missing 'channel'");
  KrausChannel channel = parse_channel(j["channel"], dim);
  if (channel.dim_in() != dim) {
    fail("channel", "input dimension " + std::to_string(channel.dim_in()) + " does not match state dimension " +
                        std::to_string(dim));
  }
  std::optional<Ensemble> ensemble;
  if (j.contains("ensemble")) {
    ensemble = parse_ensemble(j["ensemble"]);
    if (ensemble->dim() != dim) fail("ensemble", "member dimension does not match the state");
  }
  std::vector<std::string> measures;
  if (j.contains("measures")) {
    if (!j["measures"].is_array()) fail("measures", "expected an array of names");
    for (const auto& m : j["measures"]) {
      if (!m.is_string()) fail("measures", "expected strings");
      const auto name = m.get<std::string>();
      const auto& known = known_measures();
      if (std::find(known.begin(), known.end(), name) == known.end()) fail("measures", "unknown measure '" + name + "'");
      measures.push_back(name);
    }
  } else {
    measures = {"measured_information", "mutual_information"};
  }
  return Scenario{std::move(state), std::move(basis), std::move(channel), std::move(ensemble), std::move(measures)};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open scenario file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

Json echo(const Scenario& s) {
  Json j;
  if (const auto* psi = std::get_if<PureState>(&s.state)) {
    j["state"] = {{"pure", vector_json(psi->amplitudes())}};
  } else {
    j["state"] = {{"density", matrix_json(std::get<DensityMatrix>(s.state).mat())}};
  }
  Json cols = Json::array();
  for (std::size_t c = 0; c < s.basis.dim(); ++c) cols.push_back(vector_json(s.basis.vector(c)));
  j["basis"] = {{"columns", std::move(cols)}};
  Json ks = Json::array();
  for (const auto& k : s.channel.kraus()) ks.push_back(matrix_json(k));
  j["channel"] = {{"name", s.channel.name()}, {"kraus", std::move(ks)}};
  if (s.ensemble) {
    Json members = Json::array();
    for (const auto& m : s.ensemble->members()) members.push_back(matrix_json(m.mat()));
    j["ensemble"] = {{"weights", Json(std::vector<double>(s.ensemble->weights().begin(), s.ensemble->weights().end()))},
                     {"members", std::move(members)}};
  }
  j["measures"] = s.measures;
  return j;
}

Json compute(const Scenario& s) {
  const DensityMatrix rho = s.density();
  const bool pure_input = std::holds_alternative<PureState>(s.state);
  auto wants = [&](const char* m) { return std::find(s.measures.begin(), s.measures.end(), m) != s.measures.end(); };

  Json results = Json::object();
  Json warnings = Json::array();

  const MutualInfoResult mi = pure_input ? mutual_information(std::get<PureState>(s.state), s.basis, s.channel)
                                         : mutual_information(rho, s.basis, s.channel);
  if (wants("measured_information")) results["measured_information"] = measured_information(rho, s.basis);
  if (wants("mutual_information")) {
    results["mutual_information"] = {{"mutual_information", mi.mutual_information},
                                     {"measured_entropy_in", mi.measured_entropy_in},
                                     {"measured_entropy_out", mi.measured_entropy_out},
                                     {"joint_entropy_out", mi.joint_entropy_out}};
  }
  if (wants("holevo")) {
    const bool explicit_ens = s.ensemble.has_value();
    const Ensemble ens = explicit_ens ? *s.ensemble : measured_ensemble(rho, s.basis);
    results["holevo"] = {{"chi", holevo_reduction(ens, s.channel)},
                         {"ensemble", explicit_ens ? "explicit" : "measured"}};
  }
  const bool square = s.channel.dim_in() == s.channel.dim_out();
  if ((wants("fidelity_pure") || wants("fidelity_uhlmann")) && !square) {
    warnings.push_back("fidelities skipped: channel changes the dimension");
  } else {
    if (wants("fidelity_pure")) {
      if (!rho.is_pure()) warnings.push_back("fidelity_pure: input state is not pure");
      results["fidelity_pure"] = {{"input", fidelity_pure(rho, apply(s.channel, rho))}};
    }
    if (wants("fidelity_uhlmann")) {
      const DensityMatrix dephased = dephase(rho, s.basis);
      results["fidelity_uhlmann"] = {{"input", fidelity_uhlmann(rho, apply(s.channel, rho))},
                                     {"dephased", fidelity_uhlmann(dephased, apply(s.channel, dephased))}};
    }
  }

  Json report;
  report["inputs"] = echo(s);
  report["results"] = std::move(results);
  report["intermediates"] = {{"S_rho_M", mi.measured_entropy_in},
                             {"S_rho_M_out", mi.measured_entropy_out},
                             {"S_rho_E_out", mi.joint_entropy_out}};
  report["warnings"] = std::move(warnings);
  return report;
}

std::string format_report_table(const Json& report) {
  std::ostringstream os;
  auto row = [&](const std::string& name, double v) { os << std::left << std::setw(40) << name << fixed9(v) << '\n'; };
  for (const auto& [k, v] : report["results"].items()) {
    if (v.is_number()) {
      row(k, v.get<double>());
    } else {
      for (const auto& [k2, v2] : v.items())
        if (v2.is_number()) row(k + "." + k2, v2.get<double>());
    }
  }
  for (const auto& [k, v] : report["intermediates"].items()) row(k, v.get<double>());
  for (const auto& w : report["warnings"]) os << "warning: " << w.get<std::string>() << '\n';
  return os.str();
}

std::vector<DemoRow> demo_rows() {
  const PureState plus = PureState::normalized({1.0, 1.0});
  const auto comp = MeasurementBasis::computational(2);
  std::vector<DemoRow> rows;
  rows.push_back({"identity, |+>", "I", mutual_information(plus, comp, channels::identity(2)).mutual_information, 1.0});
  rows.push_back({"dephasing lambda=1, |+>", "I", mutual_information(plus, comp, channels::dephasing(1.0)).mutual_information, 0.0});
  rows.push_back(
      {"depolarizing p=1, |+>", "I", mutual_information(plus, comp, channels::depolarizing(1.0)).mutual_information, -1.0});
  rows.push_back({"entropy exchange dephasing lambda=1, I/2", "S_e",
                  entropy_exchange_crosscheck(DensityMatrix::maximally_mixed(2), channels::dephasing(1.0)), 1.0});
  const Ensemble ens({0.5, 0.5}, {DensityMatrix::from_pure(PureState::basis_state(2, 0)),
                                  DensityMatrix::from_pure(PureState::basis_state(2, 1))});
  for (double p : {0.0, 0.5, 1.0}) {
    std::ostringstream label;
    label << "holevo p=" << p;
    rows.push_back({label.str(), "chi", holevo_reduction(ens, channels::depolarizing(p)), 1.0 - binary_entropy(p / 2)});
  }
  return rows;
}

std::string demo_table(const std::vector<DemoRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(44) << "case" << std::setw(6) << "qty" << std::setw(16) << "value"
     << "expected\n";
  os << std::string(80, '-') << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(44) << r.label << std::setw(6) << r.quantity << std::setw(16) << fixed9(r.value)
       << fixed9(r.expected) << '\n';
  }
  return os.str();
}

Json demo_json(const std::vector<DemoRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    a.push_back({{"case", r.label}, {"quantity", r.quantity}, {"value", r.value}, {"expected", r.expected}});
  }
  return Json{{"demo", std::move(a)}};
}

}  // namespace qmi
