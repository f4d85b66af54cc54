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
#include <cstdint>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "ququart/ququart.h"

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_GT(std::strlen(qq_version()), 0u);
  EXPECT_STREQ(qq_status_name(QQ_OK), "ok");
  EXPECT_STRNE(qq_status_name(QQ_ERR_PARSE), qq_status_name(QQ_ERR_IO));
}

TEST(CApi, BellStateFromRegister) {
  const int dims[2] = {4, 4}, levels[2] = {0, 0};
  qq_state* s = nullptr;
  ASSERT_EQ(qq_state_basis(2, dims, levels, &s), QQ_OK);
  EXPECT_EQ(qq_state_size(s), 16u);
  ASSERT_EQ(qq_state_apply_ms(s, 0, 1, kPi / 4), QQ_OK);
  std::vector<double> p(16);
  ASSERT_EQ(qq_state_populations(s, p.data(), p.size()), QQ_OK);
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_NEAR(p[5], 0.5, 1e-12);
  double f = 0.0;
  int physical = 0;
  ASSERT_EQ(qq_bell_fidelity(p[0], p[5], 1.0, &f, &physical), QQ_OK);
  EXPECT_NEAR(f, 1.0, 1e-9);
  EXPECT_EQ(physical, 1);
  ASSERT_EQ(qq_state_apply_rotation(s, 1, 3, 0.0, kPi), QQ_OK);
  ASSERT_EQ(qq_state_populations(s, p.data(), p.size()), QQ_OK);
  EXPECT_NEAR(p[3], 0.5, 1e-12);
  qq_state_free(s);
}

TEST(CApi, ErrorsMapToStatus) {
  const int dims[1] = {9}, levels[1] = {0};
  qq_state* s = nullptr;
  EXPECT_EQ(qq_state_basis(1, dims, levels, &s), QQ_ERR_DIMENSION);
  EXPECT_EQ(s, nullptr);
  EXPECT_GT(std::strlen(qq_last_error()), 0u);
  double f = 0.0;
  int physical = 0;
  EXPECT_EQ(qq_bell_fidelity(1.5, 0.0, 0.0, &f, &physical), QQ_ERR_VALIDATION);
  EXPECT_EQ(qq_validate_config("/nonexistent/config.json"), QQ_ERR_IO);
  qq_transpiled* t = nullptr;
  EXPECT_EQ(qq_transpile("frobnicate 0\n", 0.0, 0.0, 0.0, &t), QQ_ERR_PARSE);
  EXPECT_NE(std::string(qq_last_error()).find("line 1"), std::string::npos);
  EXPECT_EQ(qq_state_populations(nullptr, &f, 1), QQ_ERR_ARGUMENT);
}

TEST(CApi, RunExperimentInMemory) {
  const char* cfg = R"({"experiment": "parity", "seed": 5, "shots": 200,
    "parity": {"source": "synthetic", "p00": 0.45, "p11": 0.45, "amplitude": 0.62, "phase": 0.4},
    "grid": {"start": 0, "stop": 3.14159, "points": 16}})";
  qq_run_options opts{};
  qq_run* a = nullptr;
  qq_run* b = nullptr;
  ASSERT_EQ(qq_run_experiment_json(cfg, "", &opts, &a), QQ_OK) << qq_last_error();
  opts.has_seed = 1;
  opts.seed = 5;
  ASSERT_EQ(qq_run_experiment_json(cfg, "", &opts, &b), QQ_OK);
  EXPECT_EQ(qq_run_converged(a), 1);
  ASSERT_EQ(qq_run_file_count(a), qq_run_file_count(b));
  bool has_summary = false;
  for (size_t i = 0; i < qq_run_file_count(a); ++i) {
    EXPECT_STREQ(qq_run_file_name(a, i), qq_run_file_name(b, i));
    EXPECT_STREQ(qq_run_file_contents(a, i), qq_run_file_contents(b, i));
    has_summary = has_summary || std::string(qq_run_file_name(a, i)) == "summary.json";
  }
  EXPECT_TRUE(has_summary);
  qq_run_free(a);
  qq_run_free(b);
}

TEST(CApi, Transpile) {
  qq_transpiled* t = nullptr;
  ASSERT_EQ(qq_transpile("qubits 4\ncz 1 3\nrx 0 pi/2\n", 25000.0, 0.0, 0.0, &t), QQ_OK) << qq_last_error();
  EXPECT_LT(qq_transpiled_residual(t), 1e-7);
  EXPECT_GT(qq_transpiled_op_count(t), 0u);
  EXPECT_NE(std::string(qq_transpiled_native(t)).find("ions 2"), std::string::npos);
  EXPECT_NE(std::string(qq_transpiled_report(t)).find("residual"), std::string::npos);
  qq_transpiled_free(t);
}
