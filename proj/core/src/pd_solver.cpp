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

#include "pdflow/pd_solver.hpp"

#include <cmath>

namespace pdflow {

namespace {

constexpr double kDegenerateGradSq = 1e-12;

// Forward difference along x; zero across the last column.
inline double dx_fwd(const ScalarField& f, int x, int y) {
  return x < f.width() - 1 ? f.at(x + 1, y) - f.at(x, y) : 0.0;
}

// Forward difference along y; zero across the last row.
inline double dy_fwd(const ScalarField& f, int x, int y) {
  return y < f.height() - 1 ? f.at(x, y + 1) - f.at(x, y) : 0.0;
}

// Transpose of dx_fwd: p(x-1) - p(x) in the interior, -p(0) at the left
// border, p(w-2) at the right border. This is -d/dx of the matching
// backward-difference divergence.
inline double dx_fwd_transpose(const ScalarField& p, int x, int y) {
  if (x == 0) return -p.at(0, y);
  if (x == p.width() - 1) return p.at(x - 1, y);
  return p.at(x - 1, y) - p.at(x, y);
}

inline double dy_fwd_transpose(const ScalarField& p, int x, int y) {
  if (y == 0) return -p.at(x, 0);
  if (y == p.height() - 1) return p.at(x, y - 1);
  return p.at(x, y - 1) - p.at(x, y);
}

ScalarField scaled_by(const ScalarField& f, const ScalarField& weight) {
  ScalarField out = f;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= weight.data()[i];
  return out;
}

ScalarField sub(const ScalarField& a, const ScalarField& b) {
  ScalarField out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

}  // namespace

ScalarField perona_malik_weight(const ScalarField& grad_mag, double kappa) {
  if (kappa <= 0.0) throw std::invalid_argument("perona_malik_weight: kappa must be positive");
  const double k2 = kappa * kappa;
  ScalarField out = grad_mag;
  for (double& v : out.data()) v = k2 / (k2 + v * v);
  return out;
}

DualField apply_K(const FlowField& u, const ScalarField& phi) {
  require_same_size(u.u1, phi, "apply_K");
  const int w = u.width(), h = u.height();
  DualField d(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double u1x = dx_fwd(u.u1, x, y);
      const double u1y = dy_fwd(u.u1, x, y);
      const double u2x = dx_fwd(u.u2, x, y);
      const double u2y = dy_fwd(u.u2, x, y);
      d.d1x.at(x, y) = u1x;
      d.d1y.at(x, y) = u1y;
      d.d2x.at(x, y) = u2x;
      d.d2y.at(x, y) = u2y;
      d.d3.at(x, y) = phi.at(x, y) * (u1x + u2y);
    }
  }
  return d;
}

FlowField apply_K_star(const DualField& d, const ScalarField& phi) {
  require_same_size(d.d3, phi, "apply_K_star");
  const int w = d.width(), h = d.height();

  // phi*d3 feeds both rows through the transposed difference operators.
  const ScalarField pd3 = scaled_by(d.d3, phi);

  FlowField out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.u1.at(x, y) = dx_fwd_transpose(d.d1x, x, y) + dy_fwd_transpose(d.d1y, x, y) +
                        dx_fwd_transpose(pd3, x, y);
      out.u2.at(x, y) = dx_fwd_transpose(d.d2x, x, y) + dy_fwd_transpose(d.d2y, x, y) +
                        dy_fwd_transpose(pd3, x, y);
    }
  }
  return out;
}

std::pair<ScalarField, ScalarField> prox_dual_tv(const ScalarField& dx, const ScalarField& dy,
                                                 double gamma, DualProjection projection) {
  if (gamma <= 0.0) throw std::invalid_argument("prox_dual_tv: gamma must be positive");
  require_same_size(dx, dy, "prox_dual_tv");
  ScalarField ox = dx, oy = dy;
  if (projection == DualProjection::Box) {
    for (double& v : ox.data()) v = std::clamp(v, -gamma, gamma);
    for (double& v : oy.data()) v = std::clamp(v, -gamma, gamma);
  } else {
    for (std::size_t i = 0; i < ox.size(); ++i) {
      const double mag = std::hypot(ox.data()[i], oy.data()[i]);
      if (mag > gamma) {
        const double s = gamma / mag;
        ox.data()[i] *= s;
        oy.data()[i] *= s;
      }
    }
  }
  return {std::move(ox), std::move(oy)};
}

ScalarField prox_dual_div(const ScalarField& d3_tilde, double sigma, double eta) {
  if (eta <= 0.0) throw std::invalid_argument("prox_dual_div: eta must be positive");
  if (sigma < 0.0) throw std::invalid_argument("prox_dual_div: sigma must be >= 0");
  const double scale = eta / (eta + sigma);
  ScalarField out = d3_tilde;
  for (double& v : out.data()) v *= scale;
  return out;
}

FlowField prox_primal_data(const FlowField& u_tilde, const LinearizedData& lin, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("prox_primal_data: tau must be positive");
  require_same_size(u_tilde.u1, lin.ft, "prox_primal_data");
  FlowField out = u_tilde;
  for (std::size_t i = 0; i < lin.ft.size(); ++i) {
    const double fx = lin.fx.data()[i];
    const double fy = lin.fy.data()[i];
    const double g2 = fx * fx + fy * fy;
    if (g2 < kDegenerateGradSq) continue;
    const double rho = lin.ft.data()[i] + fx * out.u1.data()[i] + fy * out.u2.data()[i];
    double step;
    if (rho < -tau * g2) {
      step = tau;
    } else if (rho > tau * g2) {
      step = -tau;
    } else {
      step = -rho / g2;  // zeroes the linearized residual
    }
    out.u1.data()[i] += step * fx;
    out.u2.data()[i] += step * fy;
  }
  return out;
}

FlowField prox_primal_quadratic(const FlowField& u_tilde, const LinearizedData& lin, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("prox_primal_quadratic: tau must be positive");
  require_same_size(u_tilde.u1, lin.ft, "prox_primal_quadratic");
  FlowField out = u_tilde;
  for (std::size_t i = 0; i < lin.ft.size(); ++i) {
    const double fx = lin.fx.data()[i];
    const double fy = lin.fy.data()[i];
    const double g2 = fx * fx + fy * fy;
    const double rho = lin.ft.data()[i] + fx * out.u1.data()[i] + fy * out.u2.data()[i];
    const double scale = 2.0 * tau * rho / (1.0 + 2.0 * tau * g2);
    out.u1.data()[i] -= scale * fx;
    out.u2.data()[i] -= scale * fy;
  }
  return out;
}

SolverState make_solver_state(int width, int height) {
  SolverState st;
  st.u = FlowField(width, height);
  st.u_bar = FlowField(width, height);
  st.d = DualField(width, height);
  return st;
}

// The cycle below fuses the operator stencils with the proximal updates into
// single passes per field. Every value is computed by the same expression
// tree as the standalone operators, so the iterates are bit-identical to the
// unfused composition (the unit tests pin this).
SolverState pd_iterate(SolverState state, const LinearizedData& lin, const SolverConfig& cfg) {
  require_same_size(state.u.u1, lin.ft, "pd_iterate");
  const int w = lin.ft.width(), h = lin.ft.height();
  const FlowField u_old = std::move(state.u);
  const DualField d_old = std::move(state.d);

  // Dual ascent d_tilde = d + sigma*K(u_bar) fused with the dual proxes.
  DualField d_new(w, h);
  const double div_scale = cfg.eta / (cfg.eta + cfg.sigma);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double u1x = dx_fwd(state.u_bar.u1, x, y);
      const double u1y = dy_fwd(state.u_bar.u1, x, y);
      const double u2x = dx_fwd(state.u_bar.u2, x, y);
      const double u2y = dy_fwd(state.u_bar.u2, x, y);
      const double t1x = d_old.d1x.at(x, y) + cfg.sigma * u1x;
      const double t1y = d_old.d1y.at(x, y) + cfg.sigma * u1y;
      const double t2x = d_old.d2x.at(x, y) + cfg.sigma * u2x;
      const double t2y = d_old.d2y.at(x, y) + cfg.sigma * u2y;
      if (cfg.dual_projection == DualProjection::Box) {
        d_new.d1x.at(x, y) = std::clamp(t1x, -cfg.gamma, cfg.gamma);
        d_new.d1y.at(x, y) = std::clamp(t1y, -cfg.gamma, cfg.gamma);
        d_new.d2x.at(x, y) = std::clamp(t2x, -cfg.gamma, cfg.gamma);
        d_new.d2y.at(x, y) = std::clamp(t2y, -cfg.gamma, cfg.gamma);
      } else {
        const double m1 = std::hypot(t1x, t1y);
        const double s1 = m1 > cfg.gamma ? cfg.gamma / m1 : 1.0;
        const double m2 = std::hypot(t2x, t2y);
        const double s2 = m2 > cfg.gamma ? cfg.gamma / m2 : 1.0;
        d_new.d1x.at(x, y) = t1x * s1;
        d_new.d1y.at(x, y) = t1y * s1;
        d_new.d2x.at(x, y) = t2x * s2;
        d_new.d2y.at(x, y) = t2y * s2;
      }
      d_new.d3.at(x, y) =
          (d_old.d3.at(x, y) + cfg.sigma * (lin.phi.at(x, y) * (u1x + u2y))) * div_scale;
    }
  }
  state.d = std::move(d_new);

  if (cfg.data_term != DataTerm::L1 && cfg.data_term != DataTerm::Quadratic) {
    throw std::invalid_argument("pd_iterate: data term '" + to_string(cfg.data_term) +
                                "' has no proximal implementation");
  }

  // Primal descent u_tilde = u - tau*K*(d) fused with the data-term prox and
  // the over-relaxation update.
  const ScalarField pd3 = scaled_by(state.d.d3, lin.phi);
  FlowField u_new(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double kd1 = dx_fwd_transpose(state.d.d1x, x, y) +
                         dy_fwd_transpose(state.d.d1y, x, y) + dx_fwd_transpose(pd3, x, y);
      const double kd2 = dx_fwd_transpose(state.d.d2x, x, y) +
                         dy_fwd_transpose(state.d.d2y, x, y) + dy_fwd_transpose(pd3, x, y);
      const double ut1 = u_old.u1.at(x, y) - cfg.tau * kd1;
      const double ut2 = u_old.u2.at(x, y) - cfg.tau * kd2;

      const double fx = lin.fx.at(x, y);
      const double fy = lin.fy.at(x, y);
      const double g2 = fx * fx + fy * fy;
      double n1 = ut1, n2 = ut2;
      if (cfg.data_term == DataTerm::L1) {
        if (g2 >= kDegenerateGradSq) {
          const double rho = lin.ft.at(x, y) + fx * ut1 + fy * ut2;
          double step;
          if (rho < -cfg.tau * g2) {
            step = cfg.tau;
          } else if (rho > cfg.tau * g2) {
            step = -cfg.tau;
          } else {
            step = -rho / g2;
          }
          n1 = ut1 + step * fx;
          n2 = ut2 + step * fy;
        }
      } else {
        const double rho = lin.ft.at(x, y) + fx * ut1 + fy * ut2;
        const double scale = 2.0 * cfg.tau * rho / (1.0 + 2.0 * cfg.tau * g2);
        n1 = ut1 - scale * fx;
        n2 = ut2 - scale * fy;
      }
      u_new.u1.at(x, y) = n1;
      u_new.u2.at(x, y) = n2;
      state.u_bar.u1.at(x, y) = n1 + cfg.theta * (n1 - u_old.u1.at(x, y));
      state.u_bar.u2.at(x, y) = n2 + cfg.theta * (n2 - u_old.u2.at(x, y));
    }
  }
  state.u = std::move(u_new);

  state.k += 1;
  state.trace.push_back(residuals(u_old, state.u, d_old, state.d, lin.phi, cfg).normalized);
  return state;
}

Residuals residuals(const FlowField& u_prev, const FlowField& u_next,
                    const DualField& d_prev, const DualField& d_next,
                    const ScalarField& phi, const SolverConfig& cfg) {
  require_same_size(u_prev.u1, phi, "residuals");
  require_same_size(u_next.u1, phi, "residuals");
  const int w = phi.width(), h = phi.height();

  const FlowField ue(sub(u_prev.u1, u_next.u1), sub(u_prev.u2, u_next.u2));
  DualField de;
  de.d1x = sub(d_prev.d1x, d_next.d1x);
  de.d1y = sub(d_prev.d1y, d_next.d1y);
  de.d2x = sub(d_prev.d2x, d_next.d2x);
  de.d2y = sub(d_prev.d2y, d_next.d2y);
  de.d3 = sub(d_prev.d3, d_next.d3);
  const ScalarField pd3e = scaled_by(de.d3, phi);

  // p_r = |u_e/tau - K*(d_e)|_1 and d_r = |d_e/sigma - K(u_e)|_1, accumulated
  // per channel in row-major order; the operator values are the same stencil
  // expressions apply_K/apply_K_star evaluate.
  const double inv_tau = 1.0 / cfg.tau;
  const double inv_sigma = 1.0 / cfg.sigma;
  double p1 = 0.0, p2 = 0.0;
  double s1x = 0.0, s1y = 0.0, s2x = 0.0, s2y = 0.0, s3 = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double k1 = dx_fwd_transpose(de.d1x, x, y) + dy_fwd_transpose(de.d1y, x, y) +
                        dx_fwd_transpose(pd3e, x, y);
      const double k2 = dx_fwd_transpose(de.d2x, x, y) + dy_fwd_transpose(de.d2y, x, y) +
                        dy_fwd_transpose(pd3e, x, y);
      p1 += std::abs(ue.u1.at(x, y) * inv_tau - k1);
      p2 += std::abs(ue.u2.at(x, y) * inv_tau - k2);

      const double u1x = dx_fwd(ue.u1, x, y);
      const double u1y = dy_fwd(ue.u1, x, y);
      const double u2x = dx_fwd(ue.u2, x, y);
      const double u2y = dy_fwd(ue.u2, x, y);
      s1x += std::abs(de.d1x.at(x, y) * inv_sigma - u1x);
      s1y += std::abs(de.d1y.at(x, y) * inv_sigma - u1y);
      s2x += std::abs(de.d2x.at(x, y) * inv_sigma - u2x);
      s2y += std::abs(de.d2y.at(x, y) * inv_sigma - u2y);
      s3 += std::abs(de.d3.at(x, y) * inv_sigma - phi.at(x, y) * (u1x + u2y));
    }
  }

  Residuals r;
  r.primal = p1 + p2;
  r.dual = s1x + s1y + s2x + s2y + s3;
  r.normalized = (r.primal + r.dual) / static_cast<double>(phi.size());
  return r;
}

double operator_norm_bound(const ScalarField& phi) {
  double max_phi = 0.0;
  for (double v : phi.data()) max_phi = std::max(max_phi, std::abs(v));
  return 8.0 + 8.0 * max_phi * max_phi;
}

PdResult solve_pd(const LinearizedData& lin, const SolverConfig& cfg) {
  // The configured (tau, sigma) are expressed on a unit-norm operator; divide
  // by |K| so the convergence condition reads tau*sigma < 1. Running the raw
  // values against the unnormalized operator oscillates without converging.
  SolverConfig eff = cfg;
  const double norm = std::sqrt(operator_norm_bound(lin.phi));
  eff.tau = cfg.tau / norm;
  eff.sigma = cfg.sigma / norm;

  SolverState st = make_solver_state(lin.ft.width(), lin.ft.height());
  while (st.k < eff.pd_max_iter) {
    st = pd_iterate(std::move(st), lin, eff);
    if (st.trace.back() < eff.pd_tol) break;
  }
  return {std::move(st.u), std::move(st.trace), st.k};
}

}  // namespace pdflow
