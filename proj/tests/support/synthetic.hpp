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

// Deterministic test inputs shared by the unit and acceptance suites.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pdflow/field.hpp"
#include "pdflow/image_ops.hpp"

namespace testsupport {

inline double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline pdflow::ScalarField random_field(int w, int h, std::mt19937_64& rng,
                                        double lo = -1.0, double hi = 1.0) {
  pdflow::ScalarField f(w, h);
  for (double& v : f.data()) v = lo + (hi - lo) * next_uniform(rng);
  return f;
}

inline pdflow::FlowField random_flow(int w, int h, std::mt19937_64& rng,
                                     double lo = -1.0, double hi = 1.0) {
  return {random_field(w, h, rng, lo, hi), random_field(w, h, rng, lo, hi)};
}

// Multi-octave value noise with a few hard edges: a deterministic stand-in
// with natural-image statistics (smooth shading plus structure) for tests
// that need a realistic photograph-like input.
inline pdflow::ScalarField textured_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  pdflow::ScalarField out(w, h, 0.0);
  double amplitude = 1.0;
  for (int grid : {5, 9, 17, 33, 65}) {
    pdflow::ScalarField layer = random_field(grid, grid, rng, 0.0, 1.0);
    layer = pdflow::resample(layer, w, h);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.data()[i] += amplitude * layer.data()[i];
    }
    amplitude *= 0.55;
  }
  // Two rectangular plateaus give the image crisp edges.
  for (int y = h / 5; y < h / 2; ++y) {
    for (int x = w / 6; x < w / 3; ++x) out.at(x, y) += 0.8;
  }
  for (int y = h / 2; y < 4 * h / 5; ++y) {
    for (int x = w / 2; x < 5 * w / 6; ++x) out.at(x, y) -= 0.8;
  }

  const double lo = out.min_value(), hi = out.max_value();
  for (double& v : out.data()) v = 0.05 + 0.9 * (v - lo) / (hi - lo);
  return out;
}

}  // namespace testsupport
