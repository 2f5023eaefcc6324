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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pdflow/filters.hpp"
#include "pdflow/image_ops.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace pdflow;

namespace {

// sort-based reference median with replicate padding
ScalarField median_oracle(const ScalarField& f, int window) {
  const int r = window / 2;
  ScalarField out(f.width(), f.height());
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      std::vector<double> s;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) s.push_back(f.at_clamped(x + dx, y + dy));
      }
      std::sort(s.begin(), s.end());
      out.at(x, y) = s[(s.size() - 1) / 2];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("median_filter") {
  SUBCASE("constant image is unchanged") {
    ScalarField c(8, 8, 0.4);
    CHECK(median_filter(c, 3) == c);
  }
  SUBCASE("removes an isolated impulse") {
    ScalarField f(9, 9, 0.2);
    f.at(4, 4) = 1.0;
    ScalarField out = median_filter(f, 3);
    CHECK(out.at(4, 4) == 0.2);
  }
  SUBCASE("matches the sort-based oracle on random input") {
    std::mt19937_64 rng(41);
    ScalarField f = testsupport::random_field(8, 8, rng);
    CHECK(median_filter(f, 3) == median_oracle(f, 3));
    CHECK(median_filter(f, 5) == median_oracle(f, 5));
  }
  SUBCASE("even or undersized windows are rejected") {
    CHECK_THROWS_AS(median_filter(ScalarField(8, 8), 4), std::invalid_argument);
    CHECK_THROWS_AS(median_filter(ScalarField(8, 8), 1), std::invalid_argument);
  }
  SUBCASE("output stays within the input range") {
    std::mt19937_64 rng(42);
    ScalarField f = testsupport::random_field(10, 10, rng, -3.0, 5.0);
    ScalarField out = median_filter(f, 5);
    CHECK(out.min_value() >= f.min_value());
    CHECK(out.max_value() <= f.max_value());
  }
}

TEST_CASE("iterated_median") {
  SUBCASE("constant image is unchanged") {
    ScalarField c(16, 16, 0.7);
    CHECK(field_linf_diff(iterated_median(c, 5, 3, 2.0), c) < 1e-12);
  }
  SUBCASE("never widens the value range") {
    std::mt19937_64 rng(43);
    ScalarField f = testsupport::random_field(24, 24, rng, 0.0, 1.0);
    ScalarField out = iterated_median(f, 5, 3, 2.0);
    CHECK(out.min_value() >= f.min_value() - 1e-15);
    CHECK(out.max_value() <= f.max_value() + 1e-15);
  }
  SUBCASE("leaves fewer impulses than a single pass on a noisy ramp") {
    ScalarField clean(32, 32);
    for (int y = 0; y < 32; ++y) {
      for (int x = 0; x < 32; ++x) clean.at(x, y) = x / 31.0;
    }
    ScalarField noisy = add_salt_pepper_noise(clean, 0.1, 7);
    const auto impulses = [&](const ScalarField& img) {
      int count = 0;
      for (std::size_t i = 0; i < img.size(); ++i) {
        if (std::abs(img.data()[i] - clean.data()[i]) > 0.2) ++count;
      }
      return count;
    };
    const int single = impulses(median_filter(noisy, 5));
    const int iterated = impulses(iterated_median(noisy, 5, 3, 2.0));
    CHECK(iterated <= single);
  }
}

TEST_CASE("liosher_weight") {
  WmfParams params;
  params.delta = 10.0;
  params.patch_radius = 2;
  params.h = 1.0;

  SUBCASE("same pixel gives weight 1") {
    std::mt19937_64 rng(44);
    ScalarField f = testsupport::random_field(9, 9, rng, 0.0, 1.0);
    CHECK(liosher_weight(f, 4, 4, 4, 4, params) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("constant image gives weight 1 for any pair") {
    ScalarField c(9, 9, 0.5);
    CHECK(liosher_weight(c, 1, 1, 7, 6, params) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("patches differing by 1 everywhere give exp(-1)") {
    // left half 0, right half 1; both patches stay clear of the step
    ScalarField f(16, 8, 0.0);
    for (int y = 0; y < 8; ++y) {
      for (int x = 8; x < 16; ++x) f.at(x, y) = 1.0;
    }
    CHECK(liosher_weight(f, 3, 4, 12, 4, params) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  }
  SUBCASE("symmetric and within (0,1]") {
    std::mt19937_64 rng(45);
    ScalarField f = testsupport::random_field(12, 12, rng, 0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const int x0 = 3 + static_cast<int>(testsupport::next_uniform(rng) * 6);
      const int y0 = 3 + static_cast<int>(testsupport::next_uniform(rng) * 6);
      const int x1 = 3 + static_cast<int>(testsupport::next_uniform(rng) * 6);
      const int y1 = 3 + static_cast<int>(testsupport::next_uniform(rng) * 6);
      const double w01 = liosher_weight(f, x0, y0, x1, y1, params);
      const double w10 = liosher_weight(f, x1, y1, x0, y0, params);
      CHECK(w01 == doctest::Approx(w10).epsilon(1e-14));
      CHECK(w01 > 0.0);
      CHECK(w01 <= 1.0);
    }
  }
}

TEST_CASE("weighted_median") {
  SUBCASE("equal weights reduce to the ordinary median") {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + 2 * static_cast<int>(testsupport::next_uniform(rng) * 6);
      std::vector<double> values(n), weights(n, 1.0);
      for (double& v : values) v = testsupport::next_uniform(rng);
      std::vector<double> sorted = values;
      std::sort(sorted.begin(), sorted.end());
      CHECK(weighted_median(values, weights) == sorted[(n - 1) / 2]);
    }
  }
  SUBCASE("a dominant weight wins") {
    std::vector<double> values{5.0, -1.0, 2.0};
    std::vector<double> weights{0.1, 0.2, 10.0};
    CHECK(weighted_median(values, weights) == 2.0);
  }
  SUBCASE("worked example with the objective oracle") {
    std::vector<double> values{1.0, 2.0, 3.0, 10.0};
    std::vector<double> weights{1.0, 1.0, 1.0, 2.0};
    CHECK(weighted_median(values, weights) == 3.0);
    CHECK(oracles::brute_force_weighted_median(values, weights) == 3.0);
  }
  SUBCASE("matches the objective oracle on random input") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 500; ++trial) {
      const int n = 1 + static_cast<int>(testsupport::next_uniform(rng) * 9);
      std::vector<double> values(n), weights(n);
      for (int i = 0; i < n; ++i) {
        values[i] = -5.0 + 10.0 * testsupport::next_uniform(rng);
        weights[i] = 0.01 + testsupport::next_uniform(rng);
      }
      CHECK(weighted_median(values, weights) ==
            oracles::brute_force_weighted_median(values, weights));
    }
  }
  SUBCASE("selection property: the result is always one of the inputs") {
    std::mt19937_64 rng(48);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> values(5), weights(5);
      for (int i = 0; i < 5; ++i) {
        values[i] = testsupport::next_uniform(rng);
        weights[i] = testsupport::next_uniform(rng) + 0.01;
      }
      const double m = weighted_median(values, weights);
      CHECK(std::count(values.begin(), values.end(), m) >= 1);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(weighted_median({}, {}), std::invalid_argument);
    std::vector<double> v{1.0, 2.0};
    std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_AS(weighted_median(v, zero), std::invalid_argument);
  }
}

TEST_CASE("weighted_median_filter_flow") {
  SUBCASE("constant flow is unchanged") {
    std::mt19937_64 rng(49);
    FlowField flow(12, 12, 1.5);
    ScalarField guide = testsupport::random_field(12, 12, rng, 0.0, 1.0);
    WmfParams params;
    params.radius = 3;
    CHECK(weighted_median_filter_flow(flow, guide, params) == flow);
  }
  SUBCASE("uniform guide collapses to the plain median") {
    std::mt19937_64 rng(50);
    FlowField flow = testsupport::random_flow(10, 10, rng);
    ScalarField guide(10, 10, 0.5);
    WmfParams params;
    params.radius = 2;  // window 5 = 2R+1
    FlowField filtered = weighted_median_filter_flow(flow, guide, params);
    CHECK(filtered.u1 == median_filter(flow.u1, 5));
    CHECK(filtered.u2 == median_filter(flow.u2, 5));
  }
  SUBCASE("guide edge keeps the flow corner that a plain median rounds") {
    // flow and guide share a quadrant step; the corner pixel survives the
    // weighted median but not the unweighted one
    const int n = 16;
    FlowField flow(n, n, 0.0);
    ScalarField guide(n, n, 0.0);
    for (int y = 8; y < n; ++y) {
      for (int x = 8; x < n; ++x) {
        flow.u1.at(x, y) = 1.0;
        guide.at(x, y) = 1.0;
      }
    }
    WmfParams params;
    params.radius = 2;
    params.h = 0.25;  // sharp discrimination across the guide edge
    FlowField filtered = weighted_median_filter_flow(flow, guide, params);
    CHECK(field_linf_diff(filtered.u1, flow.u1) == 0.0);

    ScalarField plain = median_filter(flow.u1, 5);
    CHECK(plain.at(8, 8) != flow.u1.at(8, 8));  // the corner gets rounded
  }
  SUBCASE("bounded by the input range") {
    std::mt19937_64 rng(51);
    FlowField flow = testsupport::random_flow(9, 9, rng, -2.0, 2.0);
    ScalarField guide = testsupport::random_field(9, 9, rng, 0.0, 1.0);
    WmfParams params;
    params.radius = 2;
    FlowField out = weighted_median_filter_flow(flow, guide, params);
    CHECK(out.u1.min_value() >= flow.u1.min_value());
    CHECK(out.u1.max_value() <= flow.u1.max_value());
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(weighted_median_filter_flow(FlowField(8, 8), ScalarField(8, 9), WmfParams{}),
                    std::invalid_argument);
  }
}
