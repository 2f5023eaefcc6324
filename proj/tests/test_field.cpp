/*
 * Copyright 2026 The pdflow Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <random>

#include "pdflow/config.hpp"
#include "pdflow/field.hpp"
#include "support/synthetic.hpp"

using namespace pdflow;

TEST_CASE("ScalarField rejects mismatched data length") {
  CHECK_THROWS_AS(ScalarField(3, 3, std::vector<double>(8)), std::invalid_argument);
  CHECK_THROWS_AS(ScalarField(0, 3), std::invalid_argument);
  CHECK_NOTHROW(ScalarField(3, 3, std::vector<double>(9)));
}

TEST_CASE("FlowField channels must share dimensions") {
  CHECK_THROWS_AS(FlowField(ScalarField(4, 4), ScalarField(4, 5)), std::invalid_argument);
  FlowField flow(4, 4);
  CHECK(flow.width() == 4);
  CHECK(flow.all_finite());
}

TEST_CASE("field_linf_diff") {
  ScalarField a(4, 4, 0.0), b(4, 4, 1.0);
  CHECK(field_linf_diff(a, a) == 0.0);
  CHECK(field_linf_diff(a, b) == 1.0);
  CHECK_THROWS_AS(field_linf_diff(a, ScalarField(4, 5)), std::invalid_argument);

  // random pair against an element-wise loop
  std::mt19937_64 rng(7);
  ScalarField x = testsupport::random_field(4, 4, rng);
  ScalarField y = testsupport::random_field(4, 4, rng);
  double expect = 0.0;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) {
      expect = std::max(expect, std::abs(x.at(i, j) - y.at(i, j)));
    }
  }
  CHECK(field_linf_diff(x, y) == expect);
}

TEST_CASE("default config matches the published parameter choices") {
  SolverConfig cfg;
  CHECK(cfg.tau == 1.0);
  CHECK(cfg.sigma == 0.9);
  CHECK(cfg.theta == 1.0);
  CHECK(cfg.gamma == 1.0);
  CHECK(cfg.eta == 0.01);
  CHECK(cfg.pyramid_spacing == 2.0);
  CHECK(cfg.pyramid_level_cap == 5);
  CHECK(cfg.warps_per_level == 10);
  CHECK(cfg.median_coarse == 5);
  CHECK(cfg.median_fine == 3);
  CHECK(cfg.wmf_delta == 10.0);
  CHECK(cfg.wmf_radius == 7);
  CHECK(cfg.data_term == DataTerm::L1);
}

TEST_CASE("validate_config accepts defaults but warns about the step sizes") {
  std::vector<std::string> warnings;
  SolverConfig cfg;
  SolverConfig checked = validate_config(cfg, &warnings);
  CHECK(checked == cfg);
  REQUIRE(warnings.size() == 1);  // tau*sigma*16 = 14.4 >= 1
}

TEST_CASE("validate_config rejects invalid fields") {
  SolverConfig cfg;
  cfg.tau = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = SolverConfig{};
  cfg.median_coarse = 4;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = SolverConfig{};
  cfg.median_fine = 1;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = SolverConfig{};
  cfg.blend_r = 1.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.blend_r = -0.1;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("validate_config warns exactly when tau*sigma*L2 >= 1") {
  // tau=0.25, sigma=0.4, L2=10: the product is 1, which is not < 1.
  SolverConfig cfg;
  cfg.tau = 0.25;
  cfg.sigma = 0.4;
  std::vector<std::string> warnings;
  validate_config(cfg, &warnings, 10.0);
  CHECK(warnings.size() == 1);

  warnings.clear();
  cfg.sigma = 0.39;  // 0.975 < 1
  validate_config(cfg, &warnings, 10.0);
  CHECK(warnings.empty());
}

TEST_CASE("validate_config is idempotent") {
  SolverConfig cfg;
  cfg.tau = 0.3;
  cfg.sigma = 0.3;
  const SolverConfig once = validate_config(cfg);
  const SolverConfig twice = validate_config(once);
  CHECK(once == cfg);
  CHECK(twice == once);
}
