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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qmi/scenario.hpp"
#include "qmi/verifier.hpp"

namespace {

int write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return 1;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmi: measured information of quantum states and channels"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string format = "json";
  std::string compute_out;
  auto* compute = app.add_subcommand("compute", "Evaluate a scenario file");
  compute->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  compute->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  compute->add_option("--out", compute_out, "Write the report here instead of stdout");

  qmi::SweepConfig cfg;
  std::optional<double> tol;
  std::string sweep_out, sweep_csv;
  bool serial = false;
  auto* sweep = app.add_subcommand("sweep", "Run one property check over random instances");
  sweep->add_option("check", cfg.check, "Check name")->required();
  sweep->add_option("--instances", cfg.instances, "Number of random instances")->check(CLI::PositiveNumber);
  sweep->add_option("--dim", cfg.dim, "System dimension")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", cfg.seed, "Master seed");
  sweep->add_option("--kraus", cfg.kraus_count, "Kraus operators per random channel")->check(CLI::PositiveNumber);
  sweep->add_option("--rank", cfg.mixed_rank, "Rank of random mixed inputs (0: pure)");
  sweep->add_option("--tol", tol, "Tolerance override");
  sweep->add_option("--out", sweep_out, "Write the JSON report here instead of stdout");
  sweep->add_option("--csv", sweep_csv, "Write per-instance records as CSV");
  sweep->add_flag("--verbose", cfg.verbose, "Include per-instance records in the JSON report");
  sweep->add_flag("--serial", serial, "Disable OpenMP over instances");

  std::uint64_t suite_seed = 7;
  std::string suite_out;
  auto* suite = app.add_subcommand("suite", "Run every registered check with default settings");
  suite->add_option("--seed", suite_seed, "Master seed");
  suite->add_option("--out", suite_out, "Write the aggregate JSON report here instead of stdout");

  std::string demo_out;
  auto* demo = app.add_subcommand("demo", "Print closed-form worked examples");
  demo->add_option("--json", demo_out, "Also write the rows as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) {
      const auto scenario = qmi::load_scenario(scenario_path);
      const auto report = qmi::compute(scenario);
      const std::string text = format == "table" ? qmi::format_report_table(report) : report.dump(2) + "\n";
      if (compute_out.empty()) {
        std::cout << text;
        return 0;
      }
      return write_text(compute_out, text);
    }
    if (*sweep) {
      cfg.tolerance = tol;
      cfg.parallel = !serial;
      const auto names = qmi::check_names();
      if (std::find(names.begin(), names.end(), cfg.check) == names.end()) {
        std::cerr << "error: unknown check '" << cfg.check << "' (known:";
        for (const auto& n : names) std::cerr << ' ' << n;
        std::cerr << ")\n";
        return 2;
      }
      const auto report = qmi::run_check(cfg);
      const std::string text = qmi::to_json(report).dump(2) + "\n";
      if (sweep_out.empty()) {
        std::cout << text;
      } else if (int rc = write_text(sweep_out, text)) {
        return rc;
      }
      if (!sweep_csv.empty()) {
        if (int rc = write_text(sweep_csv, qmi::records_csv(report))) return rc;
      }
      std::cerr << report.check << ": " << report.pass_count << "/" << report.instances_run
                << " within tolerance, max violation " << report.max_violation << "\n";
      return report.passed() ? 0 : 1;
    }
    if (*suite) {
      const auto result = qmi::run_suite(qmi::default_suite(suite_seed), suite_seed);
      const std::string text = qmi::to_json(result).dump(2) + "\n";
      if (suite_out.empty()) {
        std::cout << text;
      } else if (int rc = write_text(suite_out, text)) {
        return rc;
      }
      return result.passed() ? 0 : 1;
    }
    if (*demo) {
      const auto rows = qmi::demo_rows();
      std::cout << qmi::demo_table(rows);
      if (!demo_out.empty()) return write_text(demo_out, qmi::demo_json(rows).dump(2) + "\n");
      return 0;
    }
  } catch (const qmi::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
