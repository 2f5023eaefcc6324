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

#include "pdflow/flow_color.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "pdflow/flow_io.hpp"

namespace pdflow {

namespace {

// The standard 55-entry color wheel: six hue segments with the classic
// per-segment counts.
std::vector<std::array<int, 3>> make_colorwheel() {
  constexpr int RY = 15, YG = 6, GC = 4, CB = 11, BM = 13, MR = 6;
  std::vector<std::array<int, 3>> wheel;
  wheel.reserve(RY + YG + GC + CB + BM + MR);
  for (int i = 0; i < RY; ++i) wheel.push_back({255, 255 * i / RY, 0});
  for (int i = 0; i < YG; ++i) wheel.push_back({255 - 255 * i / YG, 255, 0});
  for (int i = 0; i < GC; ++i) wheel.push_back({0, 255, 255 * i / GC});
  for (int i = 0; i < CB; ++i) wheel.push_back({0, 255 - 255 * i / CB, 255});
  for (int i = 0; i < BM; ++i) wheel.push_back({255 * i / BM, 0, 255});
  for (int i = 0; i < MR; ++i) wheel.push_back({255, 0, 255 - 255 * i / MR});
  return wheel;
}

double percentile99_magnitude(const FlowField& flow) {
  std::vector<double> mags;
  mags.reserve(flow.u1.size());
  for (std::size_t i = 0; i < flow.u1.size(); ++i) {
    const double u1 = flow.u1.data()[i], u2 = flow.u2.data()[i];
    if (flow_value_unknown(u1, u2)) continue;
    mags.push_back(std::hypot(u1, u2));
  }
  if (mags.empty()) return 1.0;
  const std::size_t k = static_cast<std::size_t>(0.99 * (mags.size() - 1));
  std::nth_element(mags.begin(), mags.begin() + k, mags.end());
  return mags[k];
}

}  // namespace

RgbImage flow_to_color(const FlowField& flow, std::optional<double> max_magnitude) {
  static const std::vector<std::array<int, 3>> wheel = make_colorwheel();
  const int ncols = static_cast<int>(wheel.size());

  double max_rad = max_magnitude.value_or(percentile99_magnitude(flow));
  if (max_rad <= 0.0) max_rad = 1.0;

  RgbImage out;
  out.width = flow.width();
  out.height = flow.height();
  out.rgb.resize(static_cast<std::size_t>(out.width) * out.height * 3);

  for (std::size_t i = 0; i < flow.u1.size(); ++i) {
    std::uint8_t* px = &out.rgb[3 * i];
    const double u1 = flow.u1.data()[i], u2 = flow.u2.data()[i];
    if (flow_value_unknown(u1, u2)) {
      px[0] = px[1] = px[2] = 0;
      continue;
    }
    const double fx = u1 / max_rad, fy = u2 / max_rad;
    const double rad = std::hypot(fx, fy);
    const double a = std::atan2(-fy, -fx) / std::numbers::pi;  // in [-1,1]
    const double fk = (a + 1.0) / 2.0 * (ncols - 1);
    const int k0 = static_cast<int>(std::floor(fk));
    const int k1 = (k0 + 1) % ncols;
    const double f = fk - k0;
    for (int c = 0; c < 3; ++c) {
      double col = (1.0 - f) * (wheel[k0][c] / 255.0) + f * (wheel[k1][c] / 255.0);
      if (rad <= 1.0) {
        col = 1.0 - rad * (1.0 - col);  // saturate with magnitude
      } else {
        col *= 0.75;  // out of range
      }
      px[c] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(col, 0.0, 1.0)));
    }
  }
  return out;
}

}  // namespace pdflow
