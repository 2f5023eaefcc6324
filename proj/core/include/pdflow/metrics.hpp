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

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdflow/field.hpp"

namespace pdflow {

/// Per-pixel validity mask, row-major; nonzero = valid.
using PixelMask = std::vector<std::uint8_t>;

struct SequenceEval {
  std::string name;
  double aae_degrees = 0.0;
  double epe_pixels = 0.0;
};

/// Average angular error in degrees: mean over valid pixels of the 3-D angle
/// between (u1,u2,1) vectors of the computed and exact flow. Pixels where the
/// exact flow carries the unknown sentinel are always excluded; an optional
/// mask restricts further.
double aae(const FlowField& computed, const FlowField& exact, const PixelMask* mask = nullptr);

/// Average end-point error in pixels: mean Euclidean distance over valid pixels.
double epe(const FlowField& computed, const FlowField& exact, const PixelMask* mask = nullptr);

/// Per-pixel end-point error (no masking).
ScalarField per_pixel_epe(const FlowField& computed, const FlowField& exact);

/// Mean 2-D cosine similarity between flow vectors (no arccos, no
/// homogenization); kept for comparison against the angular error.
/// Pixels where either flow vanishes are skipped.
double mean_flow_cosine(const FlowField& computed, const FlowField& exact,
                        const PixelMask* mask = nullptr);

/// Unweighted arithmetic means of (AAE, EPE) over a set of sequences.
std::pair<double, double> average_report(std::span<const SequenceEval> evals);

/// Synthetic translating-disc pair: frame 1 holds an anti-aliased disc of
/// intensity fg on a bg background, frame 2 the same disc shifted right.
/// ground_truth is (shift, 0) inside the union of the discs and 0 outside;
/// valid excludes a 2 px band around the union boundary.
struct BallSequence {
  ScalarField f1;
  ScalarField f2;
  FlowField ground_truth;
  PixelMask valid;
};

/// centered = false puts the disc center at pixel (0,0), so only a quarter
/// disc is in frame; centered = true uses the image center.
BallSequence make_ball_sequence(int size, double radius, double shift, double fg = 1.0,
                                double bg = 0.0, bool centered = false);

/// Pixels at least `margin` px inside both discs (the eroded interior used
/// for evaluation away from the motion boundary).
PixelMask ball_interior_mask(int size, double radius, double shift, double margin,
                             bool centered = false);

}  // namespace pdflow
