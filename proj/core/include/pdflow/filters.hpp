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

#include <span>

#include "pdflow/field.hpp"

namespace pdflow {

/// Parameters of the patch-similarity weighted median.
struct WmfParams {
  double delta = 10.0;   // std of the Gaussian over patch offsets
  int radius = 7;        // search window half-width R (|x-y|_inf <= R)
  int patch_radius = 2;  // half-width of the patch the weight integrates over
  double h = 1.0;        // scale in the exponent (grid size)
};

/// Median over the window x window neighborhood, replicate-edge padding.
/// Window must be odd and >= 3.
ScalarField median_filter(const ScalarField& f, int window);

/// Two-stage scheme: downsample by `spacing`, median with coarse_window,
/// upsample back, median with fine_window. The upsampled intermediate is
/// clamped to the input range so the filter never widens it.
ScalarField iterated_median(const ScalarField& f, int coarse_window, int fine_window,
                            double spacing);

/// Patch-similarity weight exp(-(1/h^2) * sum_t G_delta(t)|f(x+t)-f(y+t)|)
/// between pixels (x0,y0) and (x1,y1); the Gaussian is normalized to sum 1
/// over the patch.
double liosher_weight(const ScalarField& f, int x0, int y0, int x1, int y1,
                      const WmfParams& params);

/// Minimizer of sum_i w_i |x - u_i| over the input values: the smallest value
/// whose cumulative weight reaches half the total (lower-middle tie rule).
double weighted_median(std::span<const double> values, std::span<const double> weights);

/// Replaces each flow channel value by the weighted median over the
/// (2R+1)^2 window, weights from patch similarity on the guide image.
FlowField weighted_median_filter_flow(const FlowField& flow, const ScalarField& guide,
                                      const WmfParams& params);

}  // namespace pdflow
