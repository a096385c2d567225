// Copyright 2026 The memq Authors
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

#ifndef MEMQ_TOOLS_CLI_HPP_
#define MEMQ_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "memq/dynamics.hpp"

namespace memq::cli {

inline constexpr const char* kToolName = "memq";
inline constexpr const char* kVersion = "0.1.0";

enum class Command { kCpMap, kEntanglement, kDecoherenceTime, kKraus, kValidate };
enum class OutputFormat { kCsv, kJson };

struct AlphaRange {
  double min;
  double max;
  int steps;
};

struct RunConfig {
  Command command = Command::kEntanglement;
  double alpha = 0.1;
  bool alpha_given = false;
  std::optional<AlphaRange> alpha_range;
  double g = 0.5;
  double t_max = 10.0;
  int n_points = 400;
  DynamicsMode mode = DynamicsMode::kMemory;
  OutputFormat format = OutputFormat::kCsv;
  std::string output_path = "-";
  double tolerance_scale = 1.0;

  void validate() const;
  std::vector<double> alphas() const;
};

// Missing values (NaN, "none") serialize as "none" in CSV and null in JSON.
using Cell = std::variant<double, std::int64_t, bool, std::string, std::monostate>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool passed = true;
};

const char* to_string(Command c);

// Thrown by parse_args for --help and --version.
struct HelpRequested {
  std::string text;
};

// Parses argv into a RunConfig. Throws memq::Error on invalid input.
RunConfig parse_args(int argc, const char* const* argv);

Table run_cp_map(const RunConfig& cfg);
Table run_entanglement(const RunConfig& cfg);
Table run_decoherence_time(const RunConfig& cfg);
Table run_kraus(const RunConfig& cfg);
Table run_validate(const RunConfig& cfg);
Table run_command(const RunConfig& cfg);

std::string render_csv(const Table& table, const RunConfig& cfg);
std::string render_json(const Table& table, const RunConfig& cfg);

// Full front end: parse, run, write. Returns the process exit status.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace memq::cli

#endif  // MEMQ_TOOLS_CLI_HPP_
