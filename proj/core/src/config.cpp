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

#include "pdflow/config.hpp"

#include <sstream>

namespace pdflow {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("SolverConfig: " + message);
}

void require_window(int window, const char* name) {
  require(window >= 3, std::string(name) + " must be >= 3");
  require(window % 2 == 1, std::string(name) + " must be odd");
}

}  // namespace

SolverConfig validate_config(const SolverConfig& cfg,
                             std::vector<std::string>* warnings,
                             double opnorm_sq) {
  require(cfg.tau > 0.0, "tau must be positive");
  require(cfg.sigma > 0.0, "sigma must be positive");
  require(cfg.theta >= 0.0, "theta must be non-negative");
  require(cfg.gamma > 0.0, "gamma must be positive");
  require(cfg.eta > 0.0, "eta must be positive");
  require(cfg.kappa > 0.0, "kappa must be positive");
  require(cfg.blend_r > 0.0 && cfg.blend_r < 1.0, "blend_r must lie in (0,1)");
  require(cfg.pyramid_spacing > 1.0, "pyramid_spacing must exceed 1");
  require(cfg.pyramid_levels >= 0, "pyramid_levels must be >= 0 (0 = auto)");
  require(cfg.pyramid_level_cap >= 1, "pyramid_level_cap must be >= 1");
  require(cfg.warps_per_level >= 1, "warps_per_level must be >= 1");
  require(cfg.pd_max_iter >= 1, "pd_max_iter must be >= 1");
  require(cfg.pd_tol >= 0.0, "pd_tol must be non-negative");
  require_window(cfg.median_coarse, "median_coarse");
  require_window(cfg.median_fine, "median_fine");
  require(cfg.wmf_delta > 0.0, "wmf_delta must be positive");
  require(cfg.wmf_radius >= 1, "wmf_radius must be >= 1");

  if (warnings != nullptr && cfg.tau * cfg.sigma * opnorm_sq >= 1.0) {
    std::ostringstream oss;
    oss << "tau*sigma*|K|^2 = " << cfg.tau * cfg.sigma * opnorm_sq
        << " >= 1: the step sizes violate the primal-dual convergence "
           "condition; the iteration may stall or oscillate";
    warnings->push_back(oss.str());
  }
  return cfg;
}

std::string to_string(DataTerm t) {
  switch (t) {
    case DataTerm::L1: return "L1";
    case DataTerm::Quadratic: return "Quadratic";
    case DataTerm::Charbonnier: return "Charbonnier";
    case DataTerm::Lorentzian: return "Lorentzian";
  }
  return "?";
}

std::string to_string(DualProjection p) {
  return p == DualProjection::Box ? "box" : "ball";
}

std::string to_string(FilterMode m) {
  switch (m) {
    case FilterMode::Iterated: return "iterated";
    case FilterMode::Median: return "median";
    case FilterMode::None: return "none";
  }
  return "?";
}

}  // namespace pdflow
