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

#include "pdflow/pipeline.hpp"

#include <cmath>

#include "pdflow/filters.hpp"
#include "pdflow/image_ops.hpp"

namespace pdflow {

int pyramid_levels_auto(int m, int n, double spacing, int cap) {
  if (std::min(m, n) < 16) {
    throw std::invalid_argument("pyramid_levels_auto: min dimension must be >= 16");
  }
  if (spacing <= 1.0) throw std::invalid_argument("pyramid_levels_auto: spacing must exceed 1");
  // Small epsilon keeps exact powers of the spacing from rounding down.
  const double ratio = std::min(m, n) / 16.0;
  const int levels = 1 + static_cast<int>(std::floor(std::log(ratio) / std::log(spacing) + 1e-9));
  return std::clamp(levels, 1, cap);
}

std::vector<PyramidLevel> build_pyramid(const ScalarField& f1, const ScalarField& f2,
                                        const SolverConfig& cfg) {
  require_same_size(f1, f2, "build_pyramid");
  const int n = cfg.pyramid_levels > 0
                    ? cfg.pyramid_levels
                    : pyramid_levels_auto(f1.width(), f1.height(), cfg.pyramid_spacing,
                                          cfg.pyramid_level_cap);

  std::vector<PyramidLevel> levels(n);
  levels[n - 1] = {f1, f2, n - 1, 1.0};
  for (int i = n - 2; i >= 0; --i) {
    const PyramidLevel& finer = levels[i + 1];
    const int w = std::max<int>(2, static_cast<int>(std::llround(finer.f1.width() / cfg.pyramid_spacing)));
    const int h = std::max<int>(2, static_cast<int>(std::llround(finer.f1.height() / cfg.pyramid_spacing)));
    levels[i] = {resample(finer.f1, w, h), resample(finer.f2, w, h), i,
                 static_cast<double>(w) / f1.width()};
  }
  return levels;
}

std::pair<ScalarField, ScalarField> blend_derivatives(const ScalarField& fw_x,
                                                      const ScalarField& fw_y,
                                                      const ScalarField& f1_x,
                                                      const ScalarField& f1_y, double r) {
  if (r < 0.0 || r > 1.0) throw std::invalid_argument("blend_derivatives: r must lie in [0,1]");
  require_same_size(fw_x, f1_x, "blend_derivatives");
  require_same_size(fw_y, f1_y, "blend_derivatives");
  ScalarField fx = fw_x, fy = fw_y;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    fx.data()[i] = r * fw_x.data()[i] + (1.0 - r) * f1_x.data()[i];
    fy.data()[i] = r * fw_y.data()[i] + (1.0 - r) * f1_y.data()[i];
  }
  return {std::move(fx), std::move(fy)};
}

LinearizedData linearize_at(const PyramidLevel& level, const FlowField& flow,
                            const SolverConfig& cfg) {
  require_same_size(level.f1, flow.u1, "linearize_at");

  const ScalarField f2x = derivative_5pt(level.f2, Axis::X);
  const ScalarField f2y = derivative_5pt(level.f2, Axis::Y);
  const ScalarField f2w = warp_image(level.f2, flow);
  const ScalarField f2wx = warp_image(f2x, flow);
  const ScalarField f2wy = warp_image(f2y, flow);
  const ScalarField f1x = derivative_5pt(level.f1, Axis::X);
  const ScalarField f1y = derivative_5pt(level.f1, Axis::Y);

  LinearizedData lin;
  lin.ft = f2w;
  for (std::size_t i = 0; i < lin.ft.size(); ++i) lin.ft.data()[i] -= level.f1.data()[i];

  auto [fx, fy] = blend_derivatives(f2wx, f2wy, f1x, f1y, cfg.blend_r);
  lin.fx = std::move(fx);
  lin.fy = std::move(fy);

  ScalarField grad_mag = lin.fx;
  for (std::size_t i = 0; i < grad_mag.size(); ++i) {
    grad_mag.data()[i] = std::hypot(lin.fx.data()[i], lin.fy.data()[i]);
  }
  lin.phi = perona_malik_weight(grad_mag, cfg.kappa);
  return lin;
}

FlowField upsample_flow(const FlowField& flow, int new_w, int new_h) {
  const double sx = static_cast<double>(new_w) / flow.width();
  const double sy = static_cast<double>(new_h) / flow.height();
  FlowField out(resample(flow.u1, new_w, new_h), resample(flow.u2, new_w, new_h));
  for (double& v : out.u1.data()) v *= sx;
  for (double& v : out.u2.data()) v *= sy;
  return out;
}

namespace {

void filter_flow_inplace(FlowField& flow, const SolverConfig& cfg, bool finest_level) {
  const int window = finest_level ? cfg.median_fine : cfg.median_coarse;
  switch (cfg.filter_mode) {
    case FilterMode::Iterated:
      flow.u1 = iterated_median(flow.u1, window, window, cfg.pyramid_spacing);
      flow.u2 = iterated_median(flow.u2, window, window, cfg.pyramid_spacing);
      break;
    case FilterMode::Median:
      flow.u1 = median_filter(flow.u1, cfg.median_coarse);
      flow.u2 = median_filter(flow.u2, cfg.median_coarse);
      break;
    case FilterMode::None:
      break;
  }
}

}  // namespace

EstimateResult estimate_flow(const ScalarField& f1, const ScalarField& f2,
                             const SolverConfig& cfg_in) {
  const SolverConfig cfg = validate_config(cfg_in);
  require_same_size(f1, f2, "estimate_flow");
  if (std::min(f1.width(), f1.height()) < 16) {
    throw std::invalid_argument("estimate_flow: images must be at least 16 px per side");
  }

  const std::vector<PyramidLevel> levels = build_pyramid(f1, f2, cfg);

  EstimateResult result;
  FlowField flow(levels.front().f1.width(), levels.front().f1.height());

  for (std::size_t li = 0; li < levels.size(); ++li) {
    const PyramidLevel& level = levels[li];
    if (li > 0) {
      flow = upsample_flow(flow, level.f1.width(), level.f1.height());
    }
    const bool finest = li + 1 == levels.size();
    LevelTrace lt{level.level_index, {}};

    for (int warp = 0; warp < cfg.warps_per_level; ++warp) {
      const LinearizedData lin = linearize_at(level, flow, cfg);
      PdResult pd = solve_pd(lin, cfg);
      for (std::size_t i = 0; i < flow.u1.size(); ++i) {
        flow.u1.data()[i] += pd.increment.u1.data()[i];
        flow.u2.data()[i] += pd.increment.u2.data()[i];
      }
      lt.e.insert(lt.e.end(), pd.trace.begin(), pd.trace.end());
      filter_flow_inplace(flow, cfg, finest);
    }

    result.trace.insert(result.trace.end(), lt.e.begin(), lt.e.end());
    result.level_traces.push_back(std::move(lt));
  }

  if (cfg.wmf_enabled) {
    WmfParams params;
    params.delta = cfg.wmf_delta;
    params.radius = cfg.wmf_radius;
    flow = weighted_median_filter_flow(flow, f1, params);
  }

  if (!flow.all_finite()) {
    throw NumericalError("estimate_flow: non-finite values in the computed flow");
  }
  result.flow = std::move(flow);
  return result;
}

}  // namespace pdflow
