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

#include <utility>
#include <vector>

#include "pdflow/config.hpp"
#include "pdflow/field.hpp"
#include "pdflow/pd_solver.hpp"

namespace pdflow {

/// One resolution of the coarse-to-fine grid; level_index 0 is the coarsest.
struct PyramidLevel {
  ScalarField f1;
  ScalarField f2;
  int level_index = 0;
  double scale = 1.0;  // width ratio to the original image
};

/// 1 + floor(log(min(m,n)/16)/log(spacing)), clamped to [1, cap].
int pyramid_levels_auto(int m, int n, double spacing, int cap = 5);

/// Levels ordered coarsest to finest; each level is downsampled by
/// cfg.pyramid_spacing from the next finer one, the finest being the input pair.
std::vector<PyramidLevel> build_pyramid(const ScalarField& f1, const ScalarField& f2,
                                        const SolverConfig& cfg);

/// Convex combination r*warped + (1-r)*first of the spatial derivatives.
std::pair<ScalarField, ScalarField> blend_derivatives(const ScalarField& fw_x,
                                                      const ScalarField& fw_y,
                                                      const ScalarField& f1_x,
                                                      const ScalarField& f1_y, double r);

/// Warps the second frame and its 5-point derivatives along `flow`, forms the
/// temporal derivative, blends the spatial derivatives, and evaluates the
/// edge-stopping weight. The solver then works on the increment du with
/// residual rho = ft + grad_f . du around the current flow.
LinearizedData linearize_at(const PyramidLevel& level, const FlowField& flow,
                            const SolverConfig& cfg);

/// Bicubic resampling of a flow field with displacement values scaled by the
/// per-axis size ratio.
FlowField upsample_flow(const FlowField& flow, int new_w, int new_h);

/// Full coarse-to-fine estimation. trace concatenates the per-iteration
/// normalized errors of every solve; level_traces splits them per level.
struct LevelTrace {
  int level_index = 0;
  std::vector<double> e;
};
struct EstimateResult {
  FlowField flow;
  std::vector<double> trace;
  std::vector<LevelTrace> level_traces;
};

EstimateResult estimate_flow(const ScalarField& f1, const ScalarField& f2,
                             const SolverConfig& cfg);

}  // namespace pdflow
