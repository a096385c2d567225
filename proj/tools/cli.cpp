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

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "memq/channel.hpp"
#include "memq/errors.hpp"
#include "memq/kernel.hpp"
#include "memq/validate.hpp"

namespace memq::cli {

namespace {

const std::map<std::string, Command> kCommands{
    {"cp-map", Command::kCpMap},
    {"entanglement", Command::kEntanglement},
    {"decoherence-time", Command::kDecoherenceTime},
    {"kraus", Command::kKraus},
    {"validate", Command::kValidate},
};

const char* to_string(DynamicsMode m) {
  return m == DynamicsMode::kMemory ? "memory" : "markovian";
}

const char* to_string(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "json"; }

Cell number(double v) {
  if (std::isnan(v)) return std::monostate{};
  return v;
}

SweepConfig sweep(const RunConfig& cfg, double alpha) {
  SweepConfig s;
  s.alpha = alpha;
  s.g = cfg.g;
  s.t_max = cfg.t_max;
  s.n_points = cfg.n_points;
  s.mode = cfg.mode;
  s.validate();
  return s;
}

void require_range(const RunConfig& cfg) {
  if (!cfg.alpha_range) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(to_string(cfg.command)) +
                    " needs --alpha-min, --alpha-max and --alpha-steps");
  }
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& [name, value] : kCommands) {
    if (value == c) return name.c_str();
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (alpha_range) {
    if (alpha_given) {
      throw Error(ErrorCode::kInvalidConfig, "give either --alpha or an alpha range, not both");
    }
    const auto& r = *alpha_range;
    if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min < 0) {
      throw Error(ErrorCode::kInvalidConfig, "alpha range bounds must be finite and >= 0");
    }
    if (r.steps < 2 || !(r.min < r.max)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "alpha range is empty: need alpha-min < alpha-max and alpha-steps >= 2");
    }
  }
  if (!(tolerance_scale > 0) || !std::isfinite(tolerance_scale)) {
    throw Error(ErrorCode::kInvalidConfig, "--tol-scale must be finite and > 0");
  }
  sweep(*this, alphas().front());
}

std::vector<double> RunConfig::alphas() const {
  if (!alpha_range) return {alpha};
  const auto& r = *alpha_range;
  std::vector<double> out(static_cast<std::size_t>(r.steps));
  for (int i = 0; i < r.steps; ++i) {
    out[static_cast<std::size_t>(i)] = r.min + (r.max - r.min) * i / (r.steps - 1);
  }
  out.back() = r.max;
  return out;
}

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Non-Markovian qubit decoherence: CP maps, Kraus operators, entanglement"};
  app.set_version_flag("--version", std::string(kVersion));

  std::string command;
  std::string mode = "memory";
  std::string format = "csv";
  std::optional<double> alpha_min;
  std::optional<double> alpha_max;
  std::optional<int> alpha_steps;

  app.add_option("--command", command, "cp-map | entanglement | decoherence-time | kraus | validate")
      ->required();
  auto* alpha_opt = app.add_option("--alpha", cfg.alpha, "kernel amplitude ratio A/gamma0")
                        ->capture_default_str();
  app.add_option("--g", cfg.g, "memory rate ratio gamma/gamma0")->capture_default_str();
  app.add_option("--alpha-min", alpha_min, "lower end of an alpha sweep");
  app.add_option("--alpha-max", alpha_max, "upper end of an alpha sweep");
  app.add_option("--alpha-steps", alpha_steps, "number of alpha values in the sweep");
  app.add_option("--t-max", cfg.t_max, "largest gamma0 t")->capture_default_str();
  app.add_option("--points", cfg.n_points, "time points on [0, t-max]")->capture_default_str();
  app.add_option("--mode", mode, "memory | markovian")->capture_default_str();
  app.add_option("--format", format, "csv | json")->capture_default_str();
  app.add_option("--out", cfg.output_path, "output file, '-' for stdout")->capture_default_str();
  app.add_option("--tol-scale", cfg.tolerance_scale, "scale factor on validate tolerances")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{std::string(kToolName) + " " + kVersion + "\n"};
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::kInvalidConfig, e.what());
  }

  const auto cmd = kCommands.find(command);
  if (cmd == kCommands.end()) {
    throw Error(ErrorCode::kInvalidConfig, "unknown command '" + command + "'");
  }
  cfg.command = cmd->second;
  if (mode == "memory") {
    cfg.mode = DynamicsMode::kMemory;
  } else if (mode == "markovian") {
    cfg.mode = DynamicsMode::kMarkovian;
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown mode '" + mode + "'");
  }
  if (format == "csv") {
    cfg.format = OutputFormat::kCsv;
  } else if (format == "json") {
    cfg.format = OutputFormat::kJson;
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown format '" + format + "'");
  }
  cfg.alpha_given = alpha_opt->count() > 0;
  if (alpha_min || alpha_max || alpha_steps) {
    if (!(alpha_min && alpha_max && alpha_steps)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "--alpha-min, --alpha-max and --alpha-steps must be given together");
    }
    cfg.alpha_range = AlphaRange{*alpha_min, *alpha_max, *alpha_steps};
  }
  cfg.validate();
  return cfg;
}

Table run_cp_map(const RunConfig& cfg) {
  require_range(cfg);
  Table table{{"alpha", "gamma0_t", "D", "cp_flag", "window_begin", "window_end"}, {}};
  for (double alpha : cfg.alphas()) {
    const auto s = sweep(cfg, alpha);
    Cell begin = std::monostate{};
    Cell end = std::monostate{};
    if (s.mode == DynamicsMode::kMemory) {
      if (auto w = cp_violation_window(s.kernel())) {
        begin = w->begin;
        end = w->end;
      }
    }
    for (double t : s.grid()) {
      const auto c = cp_sample(propagators(s, t), t);
      table.rows.push_back({alpha, t, c.D, c.completely_positive, begin, end});
    }
  }
  return table;
}

Table run_entanglement(const RunConfig& cfg) {
  const bool sweep_alpha = cfg.alpha_range.has_value();
  Table table;
  if (sweep_alpha) table.columns.push_back("alpha");
  for (const char* c : {"gamma0_t", "N_SA", "N_SE", "N_AE", "cp_flag"}) table.columns.push_back(c);
  for (double alpha : cfg.alphas()) {
    for (const auto& p : trajectory(sweep(cfg, alpha))) {
      std::vector<Cell> row;
      if (sweep_alpha) row.push_back(alpha);
      row.insert(row.end(), {p.gamma0_t, number(p.N_SA), number(p.N_SE), number(p.N_AE), p.cp});
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

Table run_decoherence_time(const RunConfig& cfg) {
  require_range(cfg);
  Table table{{"alpha", "gamma0_tau"}, {}};
  for (double alpha : cfg.alphas()) {
    const auto tau = decoherence_time(sweep(cfg, alpha));
    table.rows.push_back({alpha, tau ? Cell{*tau} : Cell{std::string("none")}});
  }
  return table;
}

Table run_kraus(const RunConfig& cfg) {
  const bool sweep_alpha = cfg.alpha_range.has_value();
  Table table;
  if (sweep_alpha) table.columns.push_back("alpha");
  for (const char* c : {"gamma0_t", "k", "m_ee", "m_eg", "m_ge", "m_gg", "cp_flag"}) {
    table.columns.push_back(c);
  }
  for (double alpha : cfg.alphas()) {
    const auto s = sweep(cfg, alpha);
    for (double t : s.grid()) {
      const auto p = propagators(s, t);
      std::vector<Cell> prefix;
      if (sweep_alpha) prefix.push_back(alpha);
      prefix.push_back(t);
      if (!satisfies_cp_condition(p.full, p.half)) {
        auto row = prefix;
        row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{},
                               std::monostate{}, std::monostate{}, false});
        table.rows.push_back(std::move(row));
        continue;
      }
      const auto kraus = s.mode == DynamicsMode::kMarkovian ? kraus_markovian(1.0, t)
                                                            : kraus_closed_form(p, t);
      for (std::size_t k = 0; k < kraus.size(); ++k) {
        const auto& m = kraus.operators[k];
        auto row = prefix;
        row.insert(row.end(), {static_cast<std::int64_t>(k), m(0, 0).real(), m(0, 1).real(),
                               m(1, 0).real(), m(1, 1).real(), true});
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

Table run_validate(const RunConfig& cfg) {
  ValidationOptions opts;
  opts.alpha = cfg.alpha;
  opts.g = cfg.g;
  opts.t_max = cfg.t_max;
  opts.tolerance_scale = cfg.tolerance_scale;
  const auto report = run_validation(opts);
  Table table{{"check", "max_deviation", "tolerance", "status", "note"}, {}};
  for (const auto& c : report.checks) {
    table.rows.push_back({c.name, c.max_deviation, c.tolerance, std::string(to_string(c.status)),
                          c.note});
  }
  table.passed = report.passed();
  return table;
}

Table run_command(const RunConfig& cfg) {
  cfg.validate();
  switch (cfg.command) {
    case Command::kCpMap: return run_cp_map(cfg);
    case Command::kEntanglement: return run_entanglement(cfg);
    case Command::kDecoherenceTime: return run_decoherence_time(cfg);
    case Command::kKraus: return run_kraus(cfg);
    case Command::kValidate: return run_validate(cfg);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown command");
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(double v) const { return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return csv_field(v); }
    std::string operator()(std::monostate) const { return "none"; }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json config_echo(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = to_string(cfg.command);
  if (cfg.alpha_range) {
    j["alpha_min"] = cfg.alpha_range->min;
    j["alpha_max"] = cfg.alpha_range->max;
    j["alpha_steps"] = cfg.alpha_range->steps;
  } else {
    j["alpha"] = cfg.alpha;
  }
  j["g"] = cfg.g;
  j["t_max"] = cfg.t_max;
  j["points"] = cfg.n_points;
  j["mode"] = to_string(cfg.mode);
  j["format"] = to_string(cfg.format);
  if (cfg.command == Command::kValidate) j["tol_scale"] = cfg.tolerance_scale;
  return j;
}

}  // namespace

std::string render_csv(const Table& table, const RunConfig& cfg) {
  std::string out = fmt::format("# {} {} command={}\n", kToolName, kVersion, to_string(cfg.command));
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& table, const RunConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["metadata"]["tool"] = kToolName;
  doc["metadata"]["version"] = kVersion;
  doc["metadata"]["config"] = config_echo(cfg);
  if (cfg.command == Command::kValidate) doc["metadata"]["passed"] = table.passed;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < row.size(); ++i) rec[table.columns[i]] = json_cell(row[i]);
    doc["rows"].push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Table table;
  try {
    table = run_command(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string payload =
      cfg.format == OutputFormat::kCsv ? render_csv(table, cfg) : render_json(table, cfg);
  if (cfg.output_path == "-") {
    out << payload;
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file || !(file << payload)) {
      err << "error: cannot write " << cfg.output_path << "\n";
      return 2;
    }
  }
  return table.passed ? 0 : 1;
}

}  // namespace memq::cli
