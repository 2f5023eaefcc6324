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

namespace pdflow {

/// Frozen per-pixel data of one linearized (warped) problem: blended spatial
/// derivatives, temporal derivative, and the edge-stopping weight.
struct LinearizedData {
  ScalarField fx;
  ScalarField fy;
  ScalarField ft;
  ScalarField phi;
};

/// Iterate of the primal-dual scheme. u_bar is the over-relaxed flow the dual
/// step reads; trace collects the normalized error e(k) per iteration.
struct SolverState {
  FlowField u;
  FlowField u_bar;
  DualField d;
  int k = 0;
  std::vector<double> trace;
};

struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
  double normalized = 0.0;
};

/// Rational edge-stopping weight kappa^2 / (kappa^2 + g^2), in (0,1].
ScalarField perona_malik_weight(const ScalarField& grad_mag, double kappa);

/// K u = (grad u1, grad u2, phi*(dx u1 + dy u2)) with forward differences;
/// the difference across the last row/column is zero (Neumann).
DualField apply_K(const FlowField& u, const ScalarField& phi);

/// Exact negative adjoint of apply_K: row1 = -div d1 - dx(phi*d3),
/// row2 = -div d2 - dy(phi*d3), discretized so that <Ku,d> = <u,K*d> holds
/// to machine precision.
FlowField apply_K_star(const DualField& d, const ScalarField& phi);

/// Dual prox for the TV channels. Box clamps every component to
/// [-gamma, gamma]; Ball rescales each per-pixel vector onto the gamma-ball.
std::pair<ScalarField, ScalarField> prox_dual_tv(
    const ScalarField& dx, const ScalarField& dy, double gamma,
    DualProjection projection = DualProjection::Box);

/// Dual prox for the divergence channel: pointwise scaling by eta/(eta+sigma).
ScalarField prox_dual_div(const ScalarField& d3_tilde, double sigma, double eta);

/// Primal prox of the L1 data term (soft thresholding on the residual
/// rho = ft + fx*u1 + fy*u2). Gradients with |grad|^2 < 1e-12 leave the
/// pixel untouched.
FlowField prox_primal_data(const FlowField& u_tilde, const LinearizedData& lin, double tau);

/// Primal prox of the quadratic data term (closed form).
FlowField prox_primal_quadratic(const FlowField& u_tilde, const LinearizedData& lin, double tau);

/// Zero-initialized state for a width x height problem.
SolverState make_solver_state(int width, int height);

/// One full primal-dual cycle: dual step + prox, primal step + prox,
/// over-relaxation, residual bookkeeping.
SolverState pd_iterate(SolverState state, const LinearizedData& lin, const SolverConfig& cfg);

/// Primal/dual residuals of one iteration pair and their normalized sum
/// e = (p_r + d_r)/|Omega|, with |.| the L1 norm over all channels and pixels.
Residuals residuals(const FlowField& u_prev, const FlowField& u_next,
                    const DualField& d_prev, const DualField& d_next,
                    const ScalarField& phi, const SolverConfig& cfg);

/// Upper bound on |K|^2: 8 for the gradient block plus 8*max(phi)^2 for the
/// weighted-divergence block.
double operator_norm_bound(const ScalarField& phi);

/// Runs pd_iterate until the normalized error drops below cfg.pd_tol or
/// cfg.pd_max_iter iterations are reached. Returns the flow increment.
/// The configured steps are divided by the operator-norm bound inside, so
/// (tau, sigma) are step sizes on the unit-norm operator and the scheme
/// converges whenever tau*sigma < 1.
struct PdResult {
  FlowField increment;
  std::vector<double> trace;
  int iterations = 0;
};
PdResult solve_pd(const LinearizedData& lin, const SolverConfig& cfg);

}  // namespace pdflow
