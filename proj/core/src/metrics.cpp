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

#include "pdflow/metrics.hpp"

#include <cmath>
#include <numbers>

#include "pdflow/flow_io.hpp"

namespace pdflow {

namespace {

bool pixel_valid(const FlowField& exact, std::size_t i, const PixelMask* mask) {
  if (mask != nullptr && (*mask)[i] == 0) return false;
  return !flow_value_unknown(exact.u1.data()[i], exact.u2.data()[i]);
}

void check_eval_inputs(const FlowField& computed, const FlowField& exact,
                       const PixelMask* mask, const char* what) {
  require_same_size(computed.u1, exact.u1, what);
  if (mask != nullptr && mask->size() != computed.u1.size()) {
    throw std::invalid_argument(std::string(what) + ": mask size mismatch");
  }
}

}  // namespace

double aae(const FlowField& computed, const FlowField& exact, const PixelMask* mask) {
  check_eval_inputs(computed, exact, mask, "aae");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < computed.u1.size(); ++i) {
    if (!pixel_valid(exact, i, mask)) continue;
    const double c1 = computed.u1.data()[i], c2 = computed.u2.data()[i];
    const double e1 = exact.u1.data()[i], e2 = exact.u2.data()[i];
    // 3-D angle between (u1,u2,1) direction vectors.
    const double num = c1 * e1 + c2 * e2 + 1.0;
    const double den = std::sqrt(c1 * c1 + c2 * c2 + 1.0) * std::sqrt(e1 * e1 + e2 * e2 + 1.0);
    sum += std::acos(std::clamp(num / den, -1.0, 1.0));
    ++count;
  }
  if (count == 0) throw std::invalid_argument("aae: no valid pixels");
  return sum / static_cast<double>(count) * 180.0 / std::numbers::pi;
}

double epe(const FlowField& computed, const FlowField& exact, const PixelMask* mask) {
  check_eval_inputs(computed, exact, mask, "epe");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < computed.u1.size(); ++i) {
    if (!pixel_valid(exact, i, mask)) continue;
    sum += std::hypot(computed.u1.data()[i] - exact.u1.data()[i],
                      computed.u2.data()[i] - exact.u2.data()[i]);
    ++count;
  }
  if (count == 0) throw std::invalid_argument("epe: no valid pixels");
  return sum / static_cast<double>(count);
}

ScalarField per_pixel_epe(const FlowField& computed, const FlowField& exact) {
  require_same_size(computed.u1, exact.u1, "per_pixel_epe");
  ScalarField out(computed.width(), computed.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = std::hypot(computed.u1.data()[i] - exact.u1.data()[i],
                               computed.u2.data()[i] - exact.u2.data()[i]);
  }
  return out;
}

double mean_flow_cosine(const FlowField& computed, const FlowField& exact,
                        const PixelMask* mask) {
  check_eval_inputs(computed, exact, mask, "mean_flow_cosine");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < computed.u1.size(); ++i) {
    if (!pixel_valid(exact, i, mask)) continue;
    const double c1 = computed.u1.data()[i], c2 = computed.u2.data()[i];
    const double e1 = exact.u1.data()[i], e2 = exact.u2.data()[i];
    const double nc = std::hypot(c1, c2), ne = std::hypot(e1, e2);
    if (nc == 0.0 || ne == 0.0) continue;
    sum += (c1 * e1 + c2 * e2) / (nc * ne);
    ++count;
  }
  if (count == 0) throw std::invalid_argument("mean_flow_cosine: no valid pixels");
  return sum / static_cast<double>(count);
}

std::pair<double, double> average_report(std::span<const SequenceEval> evals) {
  if (evals.empty()) throw std::invalid_argument("average_report: empty input");
  double aae_sum = 0.0, epe_sum = 0.0;
  for (const auto& e : evals) {
    aae_sum += e.aae_degrees;
    epe_sum += e.epe_pixels;
  }
  const double n = static_cast<double>(evals.size());
  return {aae_sum / n, epe_sum / n};
}

namespace {

// Area-coverage rasterization of a disc via 4x4 supersampling per pixel.
ScalarField render_disc(int size, double cx, double cy, double radius, double fg, double bg) {
  ScalarField img(size, size, bg);
  const double r2 = radius * radius;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      // Quick accept/reject outside a one-pixel shell around the circle.
      const double d = std::hypot(x - cx, y - cy);
      if (d < radius - 1.0) {
        img.at(x, y) = fg;
        continue;
      }
      if (d > radius + 1.0) continue;
      int inside = 0;
      for (int sy = 0; sy < 4; ++sy) {
        for (int sx = 0; sx < 4; ++sx) {
          const double px = x - 0.5 + (sx + 0.5) / 4.0;
          const double py = y - 0.5 + (sy + 0.5) / 4.0;
          const double ddx = px - cx, ddy = py - cy;
          if (ddx * ddx + ddy * ddy <= r2) ++inside;
        }
      }
      img.at(x, y) = bg + (fg - bg) * (inside / 16.0);
    }
  }
  return img;
}

}  // namespace

BallSequence make_ball_sequence(int size, double radius, double shift, double fg, double bg,
                                bool centered) {
  if (size < 2) throw std::invalid_argument("make_ball_sequence: size too small");
  if (radius <= 0.0) throw std::invalid_argument("make_ball_sequence: radius must be positive");
  if (size < 2.0 * shift) {
    throw std::invalid_argument("make_ball_sequence: size must be at least twice the shift");
  }

  const double cx = centered ? (size - 1) / 2.0 : 0.0;
  const double cy = centered ? (size - 1) / 2.0 : 0.0;

  BallSequence seq;
  seq.f1 = render_disc(size, cx, cy, radius, fg, bg);
  seq.f2 = render_disc(size, cx + shift, cy, radius, fg, bg);
  seq.ground_truth = FlowField(size, size);
  seq.valid.assign(static_cast<std::size_t>(size) * size, 0);

  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      // Signed distance to the union of the discs (positive inside).
      const double d1 = radius - std::hypot(x - cx, y - cy);
      const double d2 = radius - std::hypot(x - cx - shift, y - cy);
      const double d_union = std::max(d1, d2);
      const std::size_t i = static_cast<std::size_t>(y) * size + x;
      if (d_union > 0.0) {
        seq.ground_truth.u1.data()[i] = shift;
      }
      seq.valid[i] = std::abs(d_union) >= 2.0 ? 1 : 0;
    }
  }
  return seq;
}

PixelMask ball_interior_mask(int size, double radius, double shift, double margin,
                             bool centered) {
  const double cx = centered ? (size - 1) / 2.0 : 0.0;
  const double cy = centered ? (size - 1) / 2.0 : 0.0;
  PixelMask mask(static_cast<std::size_t>(size) * size, 0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double d1 = radius - std::hypot(x - cx, y - cy);
      const double d2 = radius - std::hypot(x - cx - shift, y - cy);
      mask[static_cast<std::size_t>(y) * size + x] = (std::min(d1, d2) >= margin) ? 1 : 0;
    }
  }
  return mask;
}

}  // namespace pdflow
