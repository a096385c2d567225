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

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using memq::cli::Command;
using memq::cli::RunConfig;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<const char*> args) {
  args.insert(args.begin(), "memq-cli");
  std::ostringstream out;
  std::ostringstream err;
  const int status = memq::cli::main(static_cast<int>(args.size()), args.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("argument parsing") {
  const char* argv[] = {"memq-cli", "--command", "cp-map", "--alpha-min", "0", "--alpha-max",
                        "0.5",      "--alpha-steps", "6", "--g", "0.5", "--mode", "memory"};
  const auto cfg = memq::cli::parse_args(13, argv);
  CHECK(cfg.command == Command::kCpMap);
  REQUIRE(cfg.alpha_range.has_value());
  const auto alphas = cfg.alphas();
  REQUIRE(alphas.size() == 6);
  CHECK(alphas.front() == 0.0);
  CHECK(alphas.back() == 0.5);
  CHECK(cfg.t_max == 10.0);
  CHECK(cfg.n_points == 400);
}

TEST_CASE("configuration errors exit non-zero with one line") {
  for (auto args : std::vector<std::vector<const char*>>{
           {"--command", "cp-map", "--alpha-min", "0.5", "--alpha-max", "0.5", "--alpha-steps", "4"},
           {"--command", "cp-map", "--alpha-min", "0", "--alpha-max", "1", "--alpha-steps", "1"},
           {"--command", "cp-map"},
           {"--command", "entanglement", "--alpha", "0.1", "--alpha-min", "0", "--alpha-max", "1",
            "--alpha-steps", "3"},
           {"--command", "entanglement", "--alpha-min", "0"},
           {"--command", "nonsense"},
           {"--command", "entanglement", "--mode", "quantum"},
           {"--command", "entanglement", "--points", "1"},
           {"--command", "validate", "--tol-scale", "0"},
           {"--unknown-flag"},
       }) {
    const auto r = run(args);
    CHECK(r.status != 0);
    CHECK(r.out.empty());
    CHECK(lines(r.err).size() == 1);
  }
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("--command") != std::string::npos);
}

TEST_CASE("entanglement CSV schema") {
  const auto r = run({"--command", "entanglement", "--points", "11"});
  REQUIRE(r.status == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 13);
  CHECK(ls[0].rfind("# memq 0.1.0", 0) == 0);
  CHECK(ls[1] == "gamma0_t,N_SA,N_SE,N_AE,cp_flag");
  CHECK(ls[2].rfind("0,", 0) == 0);
  CHECK(std::stod(ls[2].substr(2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ls[2].substr(ls[2].size() - 9) == ",0,0,true");
  CHECK(ls[3].rfind("1,0.96", 0) == 0);
}

TEST_CASE("output is deterministic") {
  const std::vector<const char*> args = {"--command", "entanglement", "--alpha-min", "0.1",
                                         "--alpha-max", "0.3", "--alpha-steps", "3",
                                         "--points", "40", "--format", "json"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("JSON mirrors the rows with metadata") {
  const auto r = run({"--command", "entanglement", "--points", "5", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["metadata"]["tool"] == "memq");
  CHECK(doc["metadata"]["version"] == "0.1.0");
  CHECK(doc["metadata"]["config"]["command"] == "entanglement");
  CHECK(doc["metadata"]["config"]["g"] == 0.5);
  REQUIRE(doc["rows"].size() == 5);
  CHECK(doc["rows"][0]["N_SA"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(doc["rows"][0]["cp_flag"] == true);
}

TEST_CASE("cp-map regimes") {
  SUBCASE("alpha <= g keeps every row CP") {
    const auto r = run({"--command", "cp-map", "--alpha-min", "0", "--alpha-max", "0.5",
                        "--alpha-steps", "11", "--g", "0.5", "--points", "100"});
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    CHECK(ls[1] == "alpha,gamma0_t,D,cp_flag,window_begin,window_end");
    CHECK(ls.size() == 2 + 11 * 100);
    CHECK(r.out.find("false") == std::string::npos);
  }
  SUBCASE("alpha >> g violates CP and reports the window") {
    const auto r = run({"--command", "cp-map", "--alpha-min", "0.5", "--alpha-max", "3",
                        "--alpha-steps", "6", "--g", "0.1", "--format", "json"});
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    int violations = 0;
    bool window = false;
    for (const auto& row : doc["rows"]) {
      violations += row["cp_flag"] == false;
      window = window || !row["window_begin"].is_null();
    }
    CHECK(violations > 0);
    CHECK(window);
  }
}

TEST_CASE("decoherence-time table") {
  SUBCASE("memory mode decreases and alpha = 0 never crosses") {
    const auto r = run({"--command", "decoherence-time", "--alpha-min", "0", "--alpha-max",
                        "0.5", "--alpha-steps", "11", "--t-max", "50", "--format", "json"});
    REQUIRE(r.status == 0);
    const auto rows = nlohmann::json::parse(r.out)["rows"];
    REQUIRE(rows.size() == 11);
    CHECK(rows[0]["gamma0_tau"] == "none");
    double prev = 1e300;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double tau = rows[i]["gamma0_tau"];
      CHECK(tau < prev);
      prev = tau;
    }
  }
  SUBCASE("Markovian mode is alpha independent") {
    const auto r = run({"--command", "decoherence-time", "--alpha-min", "0.1", "--alpha-max",
                        "0.5", "--alpha-steps", "5", "--mode", "markovian"});
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 7);
    const auto value = [](const std::string& l) { return l.substr(l.find(',') + 1); };
    for (std::size_t i = 3; i < ls.size(); ++i) CHECK(value(ls[i]) == value(ls[2]));
  }
}

TEST_CASE("kraus command lists three operators per CP time") {
  const auto r = run({"--command", "kraus", "--points", "3", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto rows = nlohmann::json::parse(r.out)["rows"];
  REQUIRE(rows.size() == 9);
  CHECK(rows[0]["k"] == 0);
  CHECK(rows[0]["m_ee"] == doctest::Approx(1.0));
  CHECK(rows[0]["m_gg"] == doctest::Approx(1.0));
  CHECK(rows[2]["k"] == 2);

  const auto markov = run({"--command", "kraus", "--points", "3", "--mode", "markovian"});
  REQUIRE(markov.status == 0);
  CHECK(lines(markov.out).size() == 2 + 6);
}

TEST_CASE("validate command") {
  const auto ok = run({"--command", "validate", "--t-max", "3", "--format", "json"});
  CHECK(ok.status == 0);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["metadata"]["passed"] == true);
  bool reported = false;
  for (const auto& row : doc["rows"]) {
    if (row["check"] == "rho_ae_printed_hermiticity") {
      reported = row["status"] == "reported" &&
                 row["note"].get<std::string>().find("known typeset inconsistency") == 0;
    }
  }
  CHECK(reported);

  const auto strict = run({"--command", "validate", "--t-max", "3", "--tol-scale", "1e-30"});
  CHECK(strict.status == 1);
}
