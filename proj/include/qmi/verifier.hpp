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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qmi/channel.hpp"
#include "qmi/measures.hpp"
#include "qmi/state.hpp"

namespace qmi {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct SweepConfig {
  std::string check;
  std::size_t instances = 100;
  std::size_t dim = 2;
  std::size_t kraus_count = 2;
  std::size_t mixed_rank = 0;  // 0: pure inputs, otherwise rank of the random input state
  std::uint64_t seed = 7;
  std::optional<double> tolerance;
  bool verbose = false;
  bool parallel = true;
};

struct InstanceRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool passed = true;
  double violation = 0.0;
  std::vector<std::pair<std::string, double>> values;
};

/// Distribution summary of one recorded quantity (exploratory checks).
struct QuantityStats {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double max_abs = 0.0;
  double violation_fraction = 0.0;
};

struct SweepReport {
  std::string check;
  bool assertive = true;
  SweepConfig config;
  double tolerance = 0.0;
  std::size_t instances_run = 0;
  std::size_t pass_count = 0;
  std::size_t fail_count = 0;
  double max_violation = 0.0;
  std::size_t worst_index = 0;
  std::uint64_t worst_seed = 0;
  std::vector<QuantityStats> statistics;
  std::vector<InstanceRecord> records;
  double wall_clock_seconds = 0.0;

  /// Exploratory checks pass on completion.
  bool passed() const { return !assertive || fail_count == 0; }
};

/// Registered checks in suite order.
const std::vector<std::string>& check_names();
bool is_assertive(const std::string& check);
double default_tolerance(const std::string& check);

/// Throws ConfigError on unknown checks or out-of-range parameters.
void validate(const SweepConfig& cfg);

std::uint64_t instance_seed(const SweepConfig& cfg, std::size_t index);
/// One instance, fully determined by its seed.
InstanceRecord run_instance(const SweepConfig& cfg, std::uint64_t seed, std::size_t index = 0);
SweepReport run_check(const SweepConfig& cfg);

/// Reverse-manner reading: swap system and pointer factors of the
/// pointer-entangled state, apply the adjoint Kraus family to the system
/// (now second) factor, renormalize, and return S(system) - S(joint).
/// `trace_out` receives the pre-normalization trace when non-null.
double reverse_manner_information(const DensityMatrix& rho, const MeasurementBasis& basis, const KrausChannel& ch,
                                  double* trace_out = nullptr);

struct SuiteReport {
  std::uint64_t master_seed = 0;
  std::vector<SweepReport> reports;
  bool passed() const;
};

std::vector<SweepConfig> default_suite(std::uint64_t master_seed);
SuiteReport run_suite(const std::vector<SweepConfig>& configs, std::uint64_t master_seed = 0);

nlohmann::ordered_json to_json(const SweepConfig& cfg);
/// Timing fields are only emitted with `include_timing`.
nlohmann::ordered_json to_json(const SweepReport& report, bool include_timing = true);
nlohmann::ordered_json to_json(const SuiteReport& suite, bool include_timing = true);
/// Per-instance records as CSV (header + one line per instance).
std::string records_csv(const SweepReport& report);

}  // namespace qmi
