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

#include "pdflow/image_ops.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace pdflow {

namespace {

// Catmull-Rom weights applied to samples p[0..3] at offsets -1,0,1,2; t in [0,1).
double catmull_rom(const double p[4], double t) {
  return p[1] + 0.5 * t * (p[2] - p[0] +
         t * (2.0 * p[0] - 5.0 * p[1] + 4.0 * p[2] - p[3] +
         t * (3.0 * (p[1] - p[2]) + p[3] - p[0])));
}

// Separable Gaussian with per-axis std (used by resample for anisotropic
// anti-aliasing). Kernel truncated at 4*std, renormalized to sum 1.
std::vector<double> gaussian_kernel(double std) {
  const int radius = std::max(1, static_cast<int>(std::ceil(4.0 * std)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * i * i / (std * std));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

ScalarField convolve_axis(const ScalarField& f, const std::vector<double>& kernel, Axis axis) {
  const int w = f.width(), h = f.height();
  const int radius = static_cast<int>(kernel.size() / 2);
  ScalarField out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      if (axis == Axis::X) {
        for (int i = -radius; i <= radius; ++i) {
          acc += kernel[i + radius] * f.at_clamped(x + i, y);
        }
      } else {
        for (int i = -radius; i <= radius; ++i) {
          acc += kernel[i + radius] * f.at_clamped(x, y + i);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

ScalarField gaussian_smooth_xy(const ScalarField& f, double std_x, double std_y) {
  ScalarField out = f;
  if (std_x > 0.0) out = convolve_axis(out, gaussian_kernel(std_x), Axis::X);
  if (std_y > 0.0) out = convolve_axis(out, gaussian_kernel(std_y), Axis::Y);
  return out;
}

// Deterministic uniform in [0,1) from a 64-bit state; the standard library
// distributions are implementation-defined, so the mapping is done by hand to
// keep noise bit-reproducible across toolchains.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double bicubic_sample(const ScalarField& f, double x, double y) {
  x = std::clamp(x, 0.0, static_cast<double>(f.width() - 1));
  y = std::clamp(y, 0.0, static_cast<double>(f.height() - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double tx = x - x0;
  const double ty = y - y0;

  double col[4];
  for (int j = -1; j <= 2; ++j) {
    double row[4];
    for (int i = -1; i <= 2; ++i) {
      row[i + 1] = f.at_clamped(x0 + i, y0 + j);
    }
    col[j + 1] = catmull_rom(row, tx);
  }
  return catmull_rom(col, ty);
}

ScalarField warp_image(const ScalarField& f2, const FlowField& flow) {
  require_same_size(f2, flow.u1, "warp_image");
  const int w = f2.width(), h = f2.height();
  ScalarField out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = bicubic_sample(f2, x + flow.u1.at(x, y), y + flow.u2.at(x, y));
    }
  }
  return out;
}

ScalarField derivative_5pt(const ScalarField& f, Axis axis) {
  const int extent = axis == Axis::X ? f.width() : f.height();
  if (extent < 5) {
    throw std::invalid_argument("derivative_5pt: need at least 5 pixels along the axis");
  }
  const int w = f.width(), h = f.height();
  ScalarField out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double m2, m1, p1, p2;
      if (axis == Axis::X) {
        m2 = f.at_clamped(x - 2, y);
        m1 = f.at_clamped(x - 1, y);
        p1 = f.at_clamped(x + 1, y);
        p2 = f.at_clamped(x + 2, y);
      } else {
        m2 = f.at_clamped(x, y - 2);
        m1 = f.at_clamped(x, y - 1);
        p1 = f.at_clamped(x, y + 1);
        p2 = f.at_clamped(x, y + 2);
      }
      // grouped so constants cancel exactly
      out.at(x, y) = ((m2 - p2) + 8.0 * (p1 - m1)) / 12.0;
    }
  }
  return out;
}

ScalarField gaussian_smooth(const ScalarField& f, double std) {
  if (std < 0.0) throw std::invalid_argument("gaussian_smooth: std must be >= 0");
  if (std == 0.0) return f;
  return gaussian_smooth_xy(f, std, std);
}

ScalarField resample(const ScalarField& f, int new_w, int new_h) {
  if (new_w < 2 || new_h < 2) {
    throw std::invalid_argument("resample: target size must be at least 2x2");
  }
  if (new_w == f.width() && new_h == f.height()) return f;

  const double factor_x = static_cast<double>(f.width()) / new_w;
  const double factor_y = static_cast<double>(f.height()) / new_h;
  const double std_x = factor_x > 1.0 ? 0.5 * (factor_x - 1.0) : 0.0;
  const double std_y = factor_y > 1.0 ? 0.5 * (factor_y - 1.0) : 0.0;
  const ScalarField src = (std_x > 0.0 || std_y > 0.0)
                              ? gaussian_smooth_xy(f, std_x, std_y)
                              : f;

  ScalarField out(new_w, new_h);
  for (int y = 0; y < new_h; ++y) {
    for (int x = 0; x < new_w; ++x) {
      out.at(x, y) = bicubic_sample(src, (x + 0.5) * factor_x - 0.5,
                                    (y + 0.5) * factor_y - 0.5);
    }
  }
  return out;
}

ScalarField add_gaussian_noise(const ScalarField& f, double variance, std::uint64_t seed) {
  if (variance < 0.0) throw std::invalid_argument("add_gaussian_noise: variance must be >= 0");
  if (variance == 0.0) return f;

  std::mt19937_64 rng(seed);
  const double sd = std::sqrt(variance);
  ScalarField out = f;
  bool have_spare = false;
  double spare = 0.0;
  for (double& v : out.data()) {
    double z;
    if (have_spare) {
      z = spare;
      have_spare = false;
    } else {
      // Box-Muller on explicit uniforms.
      const double u1 = 1.0 - next_uniform(rng);  // (0,1]
      const double u2 = next_uniform(rng);
      const double r = std::sqrt(-2.0 * std::log(u1));
      z = r * std::cos(2.0 * std::numbers::pi * u2);
      spare = r * std::sin(2.0 * std::numbers::pi * u2);
      have_spare = true;
    }
    v = std::clamp(v + sd * z, 0.0, 1.0);
  }
  return out;
}

ScalarField add_salt_pepper_noise(const ScalarField& f, double density, std::uint64_t seed) {
  if (density < 0.0 || density > 1.0) {
    throw std::invalid_argument("add_salt_pepper_noise: density must lie in [0,1]");
  }
  std::mt19937_64 rng(seed);
  ScalarField out = f;
  for (double& v : out.data()) {
    if (next_uniform(rng) < density) {
      v = next_uniform(rng) < 0.5 ? 0.0 : 1.0;
    }
  }
  return out;
}

double psnr(const ScalarField& clean, const ScalarField& noisy) {
  require_same_size(clean, noisy, "psnr");
  double mse = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double d = clean.data()[i] - noisy.data()[i];
    mse += d * d;
  }
  mse /= static_cast<double>(clean.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

}  // namespace pdflow
