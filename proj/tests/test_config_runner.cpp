// Copyright 2026 The ququart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ququart/config.hpp"
#include "ququart/errors.hpp"
#include "ququart/runner.hpp"

using namespace ququart;

namespace {

constexpr double kPi = std::numbers::pi;

const char* kRabi = R"({
  "experiment": "rabi",
  "seed": 7,
  "shots": 100,
  "rabi": {"ion": 0, "level": 2, "rabi_frequency_hz": 25000},
  "grid": {"start": 0, "stop": 2e-4, "points": 21},
  "noise": {"laser_dephasing": 5000, "crosstalk": 0.1}
})";

std::string validation_message(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

const OutputFile& file(const RunOutput& out, std::string_view name) {
  for (const auto& f : out.files) {
    if (f.name == name) return f;
  }
  throw std::runtime_error("missing output " + std::string(name));
}

}  // namespace

TEST(Config, ParsesUnitsAndDefaults) {
  const auto c = parse_config(kRabi);
  EXPECT_EQ(c.kind, ExperimentKind::Rabi);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.shots, 100);
  EXPECT_NEAR(c.rabi.rabi_frequency, 2 * kPi * 25000, 1e-9);
  EXPECT_EQ(c.rabi.level, 2);
  ASSERT_TRUE(c.grid.has_value());
  EXPECT_EQ(c.grid->points, 21);
  EXPECT_DOUBLE_EQ(c.noise.crosstalk, 0.1);
  EXPECT_DOUBLE_EQ(c.noise.laser_dephasing, 5000.0);
}

TEST(Config, FieldErrorsNameThePath) {
  EXPECT_NE(validation_message(R"({"experiment": "rabi", "bogus": 1})").find("field 'bogus'"), std::string::npos);
  EXPECT_NE(validation_message(R"({"experiment": "warp"})").find("field 'experiment'"), std::string::npos);
  EXPECT_NE(validation_message(R"({"experiment": "rabi", "rabi": {"rabi_frequency_hz": 1, "level": 9}})")
                .find("field 'rabi.level'"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"experiment": "bell", "noise": {"crosstalk": 0.5}})").find("noise.crosstalk"),
            std::string::npos);
  EXPECT_NE(validation_message(R"({"experiment": "bell", "shots": -3})").find("field 'shots'"), std::string::npos);
  EXPECT_THROW(parse_config("{not json"), ParseError);
}

TEST(Config, OverridesRefreshHash) {
  auto c = parse_config(kRabi);
  const auto h0 = config_hash(c);
  EXPECT_EQ(h0, config_hash(parse_config(kRabi)));
  apply_overrides(c, 8u, std::nullopt);
  EXPECT_EQ(c.seed, 8u);
  EXPECT_NE(config_hash(c), h0);
  apply_overrides(c, 7u, 100);
  EXPECT_EQ(config_hash(c), h0);
  EXPECT_THROW(apply_overrides(c, std::nullopt, -1), ValidationError);
}

TEST(Config, HashIgnoresFormatting) {
  const auto a = parse_config(kRabi);
  const auto b = parse_config(nlohmann::json::parse(kRabi).dump());
  EXPECT_EQ(config_hash(a), config_hash(b));
}

TEST(Runner, RabiOutputsAreDeterministic) {
  const auto c = parse_config(kRabi);
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  ASSERT_EQ(a.files.size(), b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    EXPECT_EQ(a.files[i].name, b.files[i].name);
    EXPECT_EQ(a.files[i].contents, b.files[i].contents);
  }
  const auto summary = nlohmann::json::parse(file(a, "summary.json").contents);
  EXPECT_EQ(summary.at("experiment"), "rabi");
  EXPECT_EQ(summary.at("seed"), 7);
  EXPECT_EQ(summary.at("config_hash"), config_hash(c));
  EXPECT_TRUE(summary.at("converged").get<bool>());
}

TEST(Runner, CsvLayout) {
  const auto out = run_experiment(parse_config(kRabi));
  std::istringstream csv(file(out, "rabi.csv").contents);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("# tool=ququart", 0), 0u);
  EXPECT_NE(line.find("seed=7"), std::string::npos);
  std::getline(csv, line);
  EXPECT_EQ(line, "tau_s,population,population_err");
  int rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2);
  }
  EXPECT_EQ(rows, 21);
}

TEST(Runner, ScanCsvFormatsValues) {
  ScanResult s;
  s.parameter = "x";
  s.grid = {0.5, 1.0};
  s.add_series("y", {0.25, 0.125}, {0.0, 0.0});
  EXPECT_EQ(scan_csv(s, "m=1"), "# m=1\nx,y,y_err\n0.5,0.25,0\n1,0.125,0\n");
}

TEST(Runner, ParityAndTranspile) {
  const auto parity = run_experiment(parse_config(R"({
    "experiment": "parity", "seed": 3, "shots": 300,
    "parity": {"source": "synthetic", "p00": 0.45, "p11": 0.45, "amplitude": 0.62, "phase": 0.4},
    "grid": {"start": 0, "stop": 3.141592653589793, "points": 20}})"));
  const auto s = nlohmann::json::parse(file(parity, "summary.json").contents);
  EXPECT_NEAR(s.at("results").at("amplitude").get<double>(), 0.62, 0.1);

  const auto t = transpile_text("cnot 0 2\n");
  EXPECT_LT(t.result.residual, 1e-7);
  EXPECT_NE(t.native_text.find("ms 0 1"), std::string::npos);
  EXPECT_THROW(transpile_text("toffoli 0 1 2\n"), ParseError);
}
