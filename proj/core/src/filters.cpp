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

#include "pdflow/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pdflow/image_ops.hpp"

namespace pdflow {

namespace {

void require_window(int window) {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("median window must be odd and >= 3");
  }
}

// Gaussian over patch offsets, normalized to sum 1. Shared by the public
// liosher_weight and the filter's inner loop so both produce identical values.
struct PatchKernel {
  int radius;
  std::vector<double> g;  // (2r+1)^2 weights summing to 1

  PatchKernel(int patch_radius, double delta) : radius(patch_radius) {
    const int n = 2 * radius + 1;
    g.resize(static_cast<std::size_t>(n) * n);
    double sum = 0.0;
    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) {
        const double v = std::exp(-0.5 * (dx * dx + dy * dy) / (delta * delta));
        g[static_cast<std::size_t>(dy + radius) * n + (dx + radius)] = v;
        sum += v;
      }
    }
    for (double& v : g) v /= sum;
  }
};

double patch_weight(const ScalarField& f, int x0, int y0, int x1, int y1,
                    const PatchKernel& kernel, double h) {
  const int r = kernel.radius;
  const int n = 2 * r + 1;
  double dist = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double g = kernel.g[static_cast<std::size_t>(dy + r) * n + (dx + r)];
      dist += g * std::abs(f.at_clamped(x0 + dx, y0 + dy) - f.at_clamped(x1 + dx, y1 + dy));
    }
  }
  return std::exp(-dist / (h * h));
}

}  // namespace

ScalarField median_filter(const ScalarField& f, int window) {
  require_window(window);
  const int r = window / 2;
  const int w = f.width(), h = f.height();
  ScalarField out(w, h);
  std::vector<double> samples(static_cast<std::size_t>(window) * window);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t n = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          samples[n++] = f.at_clamped(x + dx, y + dy);
        }
      }
      const std::size_t mid = (n - 1) / 2;
      std::nth_element(samples.begin(), samples.begin() + mid, samples.begin() + n);
      out.at(x, y) = samples[mid];
    }
  }
  return out;
}

ScalarField iterated_median(const ScalarField& f, int coarse_window, int fine_window,
                            double spacing) {
  require_window(coarse_window);
  require_window(fine_window);
  if (spacing <= 1.0) throw std::invalid_argument("iterated_median: spacing must exceed 1");

  const int dw = std::max<int>(2, static_cast<int>(std::llround(f.width() / spacing)));
  const int dh = std::max<int>(2, static_cast<int>(std::llround(f.height() / spacing)));

  ScalarField coarse = median_filter(resample(f, dw, dh), coarse_window);
  ScalarField up = resample(coarse, f.width(), f.height());

  // Bicubic upsampling can overshoot; keep the intermediate inside the input
  // range so the composed filter never widens it.
  const double lo = f.min_value(), hi = f.max_value();
  for (double& v : up.data()) v = std::clamp(v, lo, hi);

  return median_filter(up, fine_window);
}

double liosher_weight(const ScalarField& f, int x0, int y0, int x1, int y1,
                      const WmfParams& params) {
  if (x0 < 0 || x0 >= f.width() || y0 < 0 || y0 >= f.height() ||
      x1 < 0 || x1 >= f.width() || y1 < 0 || y1 >= f.height()) {
    throw std::invalid_argument("liosher_weight: pixel out of range");
  }
  const PatchKernel kernel(params.patch_radius, params.delta);
  return patch_weight(f, x0, y0, x1, y1, kernel, params.h);
}

double weighted_median(std::span<const double> values, std::span<const double> weights) {
  if (values.empty()) throw std::invalid_argument("weighted_median: empty input");
  if (values.size() != weights.size()) {
    throw std::invalid_argument("weighted_median: length mismatch");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("weighted_median: negative weight");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("weighted_median: total weight is zero");

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  const double half = 0.5 * total;
  double cum = 0.0;
  for (std::size_t i : order) {
    cum += weights[i];
    if (cum >= half) return values[i];
  }
  return values[order.back()];
}

FlowField weighted_median_filter_flow(const FlowField& flow, const ScalarField& guide,
                                      const WmfParams& params) {
  require_same_size(flow.u1, guide, "weighted_median_filter_flow");
  if (params.radius < 1) throw std::invalid_argument("weighted_median_filter_flow: radius must be >= 1");

  const PatchKernel kernel(params.patch_radius, params.delta);
  const int w = flow.width(), h = flow.height();
  const int R = params.radius;
  FlowField out(w, h);
  std::vector<double> vals1, vals2, weights;
  const std::size_t cap = static_cast<std::size_t>(2 * R + 1) * (2 * R + 1);
  vals1.reserve(cap);
  vals2.reserve(cap);
  weights.reserve(cap);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      vals1.clear();
      vals2.clear();
      weights.clear();
      for (int dy = -R; dy <= R; ++dy) {
        for (int dx = -R; dx <= R; ++dx) {
          const int nx = std::clamp(x + dx, 0, w - 1);
          const int ny = std::clamp(y + dy, 0, h - 1);
          vals1.push_back(flow.u1.at(nx, ny));
          vals2.push_back(flow.u2.at(nx, ny));
          weights.push_back(patch_weight(guide, x, y, nx, ny, kernel, params.h));
        }
      }
      out.u1.at(x, y) = weighted_median(vals1, weights);
      out.u2.at(x, y) = weighted_median(vals2, weights);
    }
  }
  return out;
}

}  // namespace pdflow
