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

// Scenario files: JSON documents describing one (state, basis, channel)
// evaluation, plus the report and demo documents the CLI prints.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qmi/channel.hpp"
#include "qmi/measures.hpp"
#include "qmi/state.hpp"

namespace qmi {

/// Malformed JSON; carries a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline const std::vector<std::string>& known_measures() {
  static const std::vector<std::string> m = {"measured_information", "mutual_information", "holevo",
                                             "fidelity_pure", "fidelity_uhlmann"};
  return m;
}

struct Scenario {
  std::variant<PureState, DensityMatrix> state;
  MeasurementBasis basis;
  KrausChannel channel;
  std::optional<Ensemble> ensemble;  // holevo falls back to the measured ensemble
  std::vector<std::string> measures;

  DensityMatrix density() const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

/// Fully resolved scenario (explicit basis columns and Kraus operators);
/// parse_scenario(echo(s).dump()) reproduces s.
nlohmann::ordered_json echo(const Scenario& s);

/// Report document: echoed inputs, requested measures, named intermediates, warnings.
nlohmann::ordered_json compute(const Scenario& s);
/// Human-readable rendering of a compute() report, 9 digits after the point.
std::string format_report_table(const nlohmann::ordered_json& report);

struct DemoRow {
  std::string label;
  std::string quantity;
  double value;
  double expected;
};

std::vector<DemoRow> demo_rows();
std::string demo_table(const std::vector<DemoRow>& rows);
nlohmann::ordered_json demo_json(const std::vector<DemoRow>& rows);

}  // namespace qmi
