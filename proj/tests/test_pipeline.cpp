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

#include <cmath>
#include <random>

#include "pdflow/image_ops.hpp"
#include "pdflow/metrics.hpp"
#include "pdflow/pipeline.hpp"
#include "support/synthetic.hpp"

using namespace pdflow;

TEST_CASE("pyramid_levels_auto") {
  CHECK(pyramid_levels_auto(584, 388, 2.0) == 5);
  CHECK(pyramid_levels_auto(16, 100, 2.0) == 1);
  CHECK(pyramid_levels_auto(64, 64, 2.0) == 3);
  CHECK(pyramid_levels_auto(640, 480, 2.0, 5) == 5);   // capped
  CHECK(pyramid_levels_auto(640, 480, 2.0, 10) == 5);  // formula value 1+floor(log2(30))
  CHECK_THROWS_AS(pyramid_levels_auto(8, 100, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(pyramid_levels_auto(64, 64, 1.0), std::invalid_argument);
}

TEST_CASE("build_pyramid") {
  std::mt19937_64 rng(71);
  ScalarField f1 = testsupport::random_field(64, 64, rng, 0.0, 1.0);
  ScalarField f2 = testsupport::random_field(64, 64, rng, 0.0, 1.0);

  SUBCASE("single level keeps the originals") {
    SolverConfig cfg;
    cfg.pyramid_levels = 1;
    auto levels = build_pyramid(f1, f2, cfg);
    REQUIRE(levels.size() == 1);
    CHECK(levels[0].f1 == f1);
    CHECK(levels[0].f2 == f2);
    CHECK(levels[0].level_index == 0);
  }
  SUBCASE("three levels halve the sizes") {
    SolverConfig cfg;
    cfg.pyramid_levels = 3;
    auto levels = build_pyramid(f1, f2, cfg);
    REQUIRE(levels.size() == 3);
    CHECK(levels[0].f1.width() == 16);
    CHECK(levels[1].f1.width() == 32);
    CHECK(levels[2].f1.width() == 64);
    CHECK(levels[0].scale == doctest::Approx(0.25));
  }
  SUBCASE("constant images stay constant at all levels") {
    SolverConfig cfg;
    cfg.pyramid_levels = 3;
    ScalarField c(64, 64, 0.6);
    auto levels = build_pyramid(c, c, cfg);
    for (const auto& level : levels) {
      CHECK(field_linf_diff(level.f1, ScalarField(level.f1.width(), level.f1.height(), 0.6)) < 1e-12);
    }
  }
  SUBCASE("mismatched frames are rejected") {
    CHECK_THROWS_AS(build_pyramid(f1, ScalarField(64, 32), SolverConfig{}), std::invalid_argument);
  }
}

TEST_CASE("blend_derivatives") {
  ScalarField fw(4, 4, 1.0), f1(4, 4, 0.0);
  auto [x1, y1] = blend_derivatives(fw, fw, f1, f1, 1.0);
  CHECK(x1.at(0, 0) == 1.0);
  auto [x0, y0] = blend_derivatives(fw, fw, f1, f1, 0.0);
  CHECK(x0.at(0, 0) == 0.0);
  auto [xh, yh] = blend_derivatives(fw, fw, f1, f1, 0.5);
  CHECK(xh.at(0, 0) == 0.5);
  CHECK_THROWS_AS(blend_derivatives(fw, fw, f1, f1, 1.5), std::invalid_argument);
}

TEST_CASE("linearize_at") {
  SUBCASE("identical frames and zero flow give zero temporal derivative") {
    std::mt19937_64 rng(72);
    ScalarField f = testsupport::random_field(16, 16, rng, 0.0, 1.0);
    PyramidLevel level{f, f, 0, 1.0};
    LinearizedData lin = linearize_at(level, FlowField(16, 16), SolverConfig{});
    CHECK(lin.ft.max_value() == 0.0);
    CHECK(lin.ft.min_value() == 0.0);
  }
  SUBCASE("constant frames give zero gradients and weight one") {
    ScalarField c(16, 16, 0.5);
    PyramidLevel level{c, c, 0, 1.0};
    LinearizedData lin = linearize_at(level, FlowField(16, 16), SolverConfig{});
    CHECK(lin.fx.max_value() == 0.0);
    CHECK(lin.fy.max_value() == 0.0);
    CHECK(lin.phi.min_value() == 1.0);
  }
  SUBCASE("ground-truth flow nearly cancels the temporal derivative") {
    BallSequence seq = make_ball_sequence(200, 100.0, 4.0);
    PyramidLevel level{seq.f1, seq.f2, 0, 1.0};
    PixelMask interior = ball_interior_mask(200, 100.0, 4.0, 6.0);
    LinearizedData lin = linearize_at(level, seq.ground_truth, SolverConfig{});
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < lin.ft.size(); ++i) {
      if (interior[i] == 0) continue;
      sum += std::abs(lin.ft.data()[i]);
      ++count;
    }
    CHECK(sum / count < 0.02);
  }
  SUBCASE("phi lies in (0,1]") {
    std::mt19937_64 rng(73);
    ScalarField f1 = testsupport::textured_image(32, 32, 1);
    ScalarField f2 = testsupport::textured_image(32, 32, 2);
    PyramidLevel level{f1, f2, 0, 1.0};
    LinearizedData lin = linearize_at(level, FlowField(32, 32), SolverConfig{});
    CHECK(lin.phi.min_value() > 0.0);
    CHECK(lin.phi.max_value() <= 1.0);
  }
}

TEST_CASE("upsample_flow scales displacements with the size ratio") {
  FlowField flow(8, 8);
  for (double& v : flow.u1.data()) v = 1.0;
  for (double& v : flow.u2.data()) v = -0.5;
  FlowField up = upsample_flow(flow, 16, 16);
  CHECK(up.width() == 16);
  CHECK(up.u1.at(8, 8) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(up.u2.at(8, 8) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("estimate_flow on identical frames finds no motion") {
  ScalarField f = testsupport::textured_image(48, 48, 3);
  SolverConfig cfg;
  EstimateResult result = estimate_flow(f, f, cfg);
  FlowField zero(48, 48);
  CHECK(epe(result.flow, zero) < 0.05);
  CHECK(!result.trace.empty());
  CHECK(result.level_traces.size() == 2);  // 48 px -> 2 auto levels
}

TEST_CASE("estimate_flow recovers a small synthetic translation") {
  // reduced copy of the translating-disc experiment for speed
  BallSequence seq = make_ball_sequence(64, 32.0, 2.0);
  SolverConfig cfg;
  EstimateResult result = estimate_flow(seq.f1, seq.f2, cfg);
  PixelMask interior = ball_interior_mask(64, 32.0, 2.0, 6.0);
  const double err = epe(result.flow, seq.ground_truth, &interior);
  CHECK(err < 0.5);
}

TEST_CASE("estimate_flow is deterministic") {
  ScalarField f1 = testsupport::textured_image(32, 32, 4);
  ScalarField f2 = testsupport::textured_image(32, 32, 5);
  SolverConfig cfg;
  cfg.warps_per_level = 3;
  cfg.pd_max_iter = 30;
  EstimateResult a = estimate_flow(f1, f2, cfg);
  EstimateResult b = estimate_flow(f1, f2, cfg);
  CHECK(a.flow == b.flow);
  CHECK(a.trace == b.trace);
}

TEST_CASE("estimate_flow rejects undersized or mismatched inputs") {
  ScalarField small(8, 8, 0.5);
  CHECK_THROWS_AS(estimate_flow(small, small, SolverConfig{}), std::invalid_argument);
  ScalarField a(32, 32, 0.5), b(32, 16, 0.5);
  CHECK_THROWS_AS(estimate_flow(a, b, SolverConfig{}), std::invalid_argument);
}
