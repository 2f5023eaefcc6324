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

#include <optional>
#include <string>
#include <vector>

#include "pdflow/field.hpp"

namespace pdflow {

/// Penalty applied to the linearized brightness-constancy residual.
/// Charbonnier and Lorentzian are reserved names without proximal
/// implementations; selecting them fails at solve time.
enum class DataTerm { L1, Quadratic, Charbonnier, Lorentzian };

/// Projection used for the TV dual variables d1, d2. Box is the componentwise
/// clamp onto [-gamma, gamma]; Ball projects each per-pixel 2-vector onto the
/// Euclidean ball of radius gamma.
enum class DualProjection { Box, Ball };

/// Per-warp flow filtering scheme.
enum class FilterMode { Iterated, Median, None };

struct SolverConfig {
  double tau = 1.0;              // primal step
  double sigma = 0.9;            // dual step
  double theta = 1.0;            // over-relaxation
  double gamma = 1.0;            // TV weight
  double eta = 0.01;             // divergence weight
  double kappa = 1.0;            // contrast threshold of the edge-stopping weight
  double blend_r = 0.5;          // derivative blending ratio, in (0,1)
  double pyramid_spacing = 2.0;  // downsample factor between levels, > 1
  int pyramid_levels = 0;        // 0 = auto (formula-based)
  int pyramid_level_cap = 5;     // cap applied when pyramid_levels is auto
  int warps_per_level = 10;
  int pd_max_iter = 100;
  double pd_tol = 1e-4;          // stop when the normalized error drops below
  int median_coarse = 5;         // filter window at levels below the finest
  int median_fine = 3;           // filter window at the finest level
  double wmf_delta = 10.0;       // patch Gaussian std of the weighted median
  int wmf_radius = 7;            // weighted-median search radius R
  bool wmf_enabled = true;       // apply the weighted-median post-process
  DataTerm data_term = DataTerm::L1;
  DualProjection dual_projection = DualProjection::Box;
  FilterMode filter_mode = FilterMode::Iterated;

  bool operator==(const SolverConfig&) const = default;
};

/// Conservative default for the squared operator norm used by the step-size
/// check: gradient block + weighted-divergence block with weight <= 1.
inline constexpr double kWorstCaseOpNormSq = 16.0;

/// Checks the config invariants and returns the config unchanged.
/// Throws std::invalid_argument on violations (non-positive steps, even or
/// undersized windows, blend_r outside (0,1), spacing <= 1, ...).
/// If tau*sigma*opnorm_sq >= 1 the step sizes violate the convergence
/// condition of the primal-dual scheme; a warning string is appended to
/// *warnings (the defaults trigger this on purpose).
SolverConfig validate_config(const SolverConfig& cfg,
                             std::vector<std::string>* warnings = nullptr,
                             double opnorm_sq = kWorstCaseOpNormSq);

/// Evaluation summary for one estimated flow.
struct EvalReport {
  double aae_degrees = 0.0;
  double epe_pixels = 0.0;
  std::optional<ScalarField> per_pixel_epe;
  std::vector<double> convergence_trace;
};

std::string to_string(DataTerm t);
std::string to_string(DualProjection p);
std::string to_string(FilterMode m);

}  // namespace pdflow
