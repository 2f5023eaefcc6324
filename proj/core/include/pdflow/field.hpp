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

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdflow {

/// I/O failures (missing files, malformed headers, short reads).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-finite values appeared where the pipeline guarantees finite output.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Single-channel image or per-pixel scalar quantity on a rectangular grid.
/// Row-major, top-left origin; x indexes columns, y indexes rows.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int width, int height, double fill = 0.0);
  ScalarField(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

  /// Sample with coordinates clamped to the grid (replicate-edge boundary).
  double at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return at(x, y);
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool same_size(const ScalarField& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool all_finite() const;

  double min_value() const;
  double max_value() const;

  bool operator==(const ScalarField&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Per-pixel displacement field (u1, u2): u1 horizontal, u2 vertical, in pixels.
struct FlowField {
  ScalarField u1;
  ScalarField u2;

  FlowField() = default;
  FlowField(int width, int height, double fill = 0.0)
      : u1(width, height, fill), u2(width, height, fill) {}
  FlowField(ScalarField horizontal, ScalarField vertical);

  int width() const { return u1.width(); }
  int height() const { return u1.height(); }
  bool all_finite() const { return u1.all_finite() && u2.all_finite(); }

  bool operator==(const FlowField&) const = default;
};

/// Dual variable of the saddle-point problem: d1 and d2 are the duals of the
/// flow-channel gradients, d3 the dual of the weighted divergence.
struct DualField {
  ScalarField d1x, d1y;
  ScalarField d2x, d2y;
  ScalarField d3;

  DualField() = default;
  DualField(int width, int height)
      : d1x(width, height), d1y(width, height),
        d2x(width, height), d2y(width, height), d3(width, height) {}

  int width() const { return d3.width(); }
  int height() const { return d3.height(); }

  bool operator==(const DualField&) const = default;
};

/// Max over pixels of |a - b|. Throws on dimension mismatch.
double field_linf_diff(const ScalarField& a, const ScalarField& b);

inline void require_same_size(const ScalarField& a, const ScalarField& b,
                              const char* what) {
  if (!a.same_size(b)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                " vs " + std::to_string(b.width()) + "x" +
                                std::to_string(b.height()) + ")");
  }
}

}  // namespace pdflow
