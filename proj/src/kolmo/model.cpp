// Copyright 2026 The kolmo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kolmo/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kolmo/error.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo {

namespace {

Spectrum forward_truncated(const Field& f) {
  Spectrum c = to_spectral(f);
  truncate(c);
  return c;
}

// Dealiased fields and their derivatives, all sampled on the grid.
struct Prepared {
  int d = 0;
  std::size_t np = 0;
  Field u, omega, third;
  Field grad_u;  // a*d + b = d_b u_a
  Field sym;     // Du
  Field grad_omega, grad_third;
  Field visc;    // third^2/omega (beta form) or third/omega (k form)
};

Prepared prepare(const State& s, const ModelParams& params, Formulation form) {
  if (s.u.components() != s.grid().dim() || s.omega.components() != 1 ||
      s.beta.components() != 1) {
    throw Error(ErrorCode::Shape, "state: u must have d components, omega and beta one");
  }
  require_same_grid(s.u.grid(), s.omega.grid(), "state");
  require_same_grid(s.beta.grid(), s.omega.grid(), "state");
  check_floor(s.omega, params);

  Prepared p;
  p.d = s.grid().dim();
  p.np = s.grid().points();
  const Spectrum uh = forward_truncated(s.u);
  const Spectrum wh = forward_truncated(s.omega);
  const Spectrum bh = forward_truncated(s.beta);
  p.u = to_physical_unchecked(uh);
  p.omega = to_physical_unchecked(wh);
  p.third = to_physical_unchecked(bh);
  p.grad_u = to_physical_unchecked(gradient(uh));
  p.sym = to_physical_unchecked(sym_gradient(uh));
  p.grad_omega = to_physical_unchecked(gradient(wh));
  p.grad_third = to_physical_unchecked(gradient(bh));

  // The viscosity uses the raw collocation values of omega so that the
  // floor check above covers the divisor.
  p.visc = Field::scalar(s.grid());
  const auto w = s.omega.component(0);
  const auto b = p.third.component(0);
  auto v = p.visc.component(0);
  for (std::size_t i = 0; i < p.np; ++i) {
    v[i] = form == Formulation::Beta ? b[i] * b[i] / w[i] : b[i] / w[i];
  }
  return p;
}

// Rows of u.G pointwise, G a gradient with rows*d components.
Field transport(const Prepared& p, const Field& grad, int rows) {
  Field out(grad.grid(), rows);
  for (int a = 0; a < rows; ++a) {
    auto dst = out.component(a);
    for (int b = 0; b < p.d; ++b) {
      const auto ub = p.u.component(b);
      const auto g = grad.component(a * p.d + b);
      for (std::size_t i = 0; i < p.np; ++i) dst[i] += ub[i] * g[i];
    }
  }
  return out;
}

// div(trunc(visc * G)) for G with rows*d components.
Spectrum diffusion(const Prepared& p, const Field& g) {
  Field flux(g.grid(), g.components());
  const auto v = p.visc.component(0);
  for (int c = 0; c < g.components(); ++c) {
    const auto src = g.component(c);
    auto dst = flux.component(c);
    for (std::size_t i = 0; i < p.np; ++i) dst[i] = v[i] * src[i];
  }
  return divergence(forward_truncated(flux));
}

// Unprojected momentum tendency split into transport and viscous parts.
void momentum_parts(const Prepared& p, const ModelParams& params, Spectrum& convection,
                    Spectrum& viscous) {
  convection = forward_truncated(transport(p, p.grad_u, p.d));
  viscous = diffusion(p, p.sym);
  viscous *= params.nu;
}

double frobenius2(const Field& m, std::size_t i) {
  double s = 0.0;
  for (int c = 0; c < m.components(); ++c) s += m.component(c)[i] * m.component(c)[i];
  return s;
}

Tendency assemble(const State& state, const ModelParams& params, Formulation form) {
  const Prepared p = prepare(state, params, form);
  const std::size_t np = p.np;

  Spectrum convection, viscous;
  momentum_parts(p, params, convection, viscous);
  Spectrum mom = viscous;
  mom.add_scaled(convection, -1.0);

  // omega
  Spectrum dw = diffusion(p, p.grad_omega);
  dw *= params.alpha1;
  {
    Field local = transport(p, p.grad_omega, 1);
    const auto w = p.omega.component(0);
    auto l = local.component(0);
    for (std::size_t i = 0; i < np; ++i) l[i] = -l[i] - params.alpha2 * w[i] * w[i];
    dw += forward_truncated(local);
  }

  // beta or k
  Spectrum dt = diffusion(p, p.grad_third);
  dt *= params.alpha3;
  {
    Field local = transport(p, p.grad_third, 1);
    const auto w = p.omega.component(0);
    const auto raw_w = state.omega.component(0);
    const auto b = p.third.component(0);
    auto l = local.component(0);
    for (std::size_t i = 0; i < np; ++i) {
      const double sym2 = frobenius2(p.sym, i);
      const double gb2 = frobenius2(p.grad_third, i);
      if (form == Formulation::Beta) {
        l[i] = -l[i] - 0.5 * b[i] * w[i] + 0.5 * params.alpha4 * (b[i] / raw_w[i]) * sym2 +
               params.alpha3 * (b[i] / raw_w[i]) * gb2;
      } else {
        l[i] = -l[i] - b[i] * w[i] + params.alpha4 * p.visc.component(0)[i] * sym2;
      }
    }
    dt += forward_truncated(local);
  }

  Tendency out;
  out.du = to_physical_unchecked(leray_project(mom));
  out.domega = to_physical_unchecked(dw);
  out.dthird = to_physical_unchecked(dt);
  if (!all_finite(out.du) || !all_finite(out.domega) || !all_finite(out.dthird)) {
    throw Error(ErrorCode::BlowUp, "non-finite tendency");
  }
  return out;
}

}  // namespace

void ModelParams::validate() const {
  const std::pair<const char*, double> checks[] = {
      {"nu", nu},         {"alpha1", alpha1}, {"alpha2", alpha2},
      {"alpha3", alpha3}, {"alpha4", alpha4}, {"omega_floor", omega_floor}};
  for (const auto& [name, value] : checks) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorCode::Validation,
                  std::string(name) + " must be positive (got " + std::to_string(value) + ")");
    }
  }
}

Field State::k() const {
  Field out = beta;
  for (double& v : out.values()) v *= v;
  return out;
}

DataBounds DataBounds::of(const State& initial, Formulation form) {
  const Spectrum w = to_spectral(initial.omega);
  const Spectrum b = to_spectral(initial.beta);
  DataBounds db;
  db.omega_star = extremum(w, false).value;
  db.omega_upper_star = extremum(w, true).value;
  const double third_min = std::max(0.0, extremum(b, false).value);
  db.k_star = form == Formulation::Beta ? third_min * third_min : third_min;
  return db;
}

void check_floor(const Field& omega, const ModelParams& params) {
  const double m = min_value(omega);
  if (!(m >= params.omega_floor)) {
    throw Error(ErrorCode::FloorViolation,
                "omega dropped below the floor " + std::to_string(params.omega_floor) +
                    " (min " + std::to_string(m) + ")",
                m);
  }
}

Field eddy_viscosity(const State& state, const ModelParams& params) {
  check_floor(state.omega, params);
  require_same_grid(state.beta.grid(), state.omega.grid(), "eddy_viscosity");
  Field out = Field::scalar(state.grid());
  const auto w = state.omega.component(0);
  const auto b = state.beta.component(0);
  auto v = out.component(0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = b[i] * b[i] / w[i];
  return out;
}

Tendency rhs_beta(const State& state, const ModelParams& params) {
  return assemble(state, params, Formulation::Beta);
}

Tendency rhs_original(const State& state_k, const ModelParams& params) {
  return assemble(state_k, params, Formulation::Original);
}

Tendency rhs(const State& state, const ModelParams& params, Formulation form) {
  return assemble(state, params, form);
}

Field momentum_tendency_unprojected(const State& state, const ModelParams& params,
                                    Formulation form) {
  const Prepared p = prepare(state, params, form);
  Spectrum convection, viscous;
  momentum_parts(p, params, convection, viscous);
  viscous.add_scaled(convection, -1.0);
  return to_physical_unchecked(viscous);
}

Field recover_pressure_gradient(const State& state, const ModelParams& params, Formulation form) {
  const Prepared p = prepare(state, params, form);
  Spectrum convection, viscous;
  momentum_parts(p, params, convection, viscous);
  // grad pi = nu grad Delta^-1 div div(visc Du) - grad Delta^-1 div(u.grad u)
  Spectrum source = divergence(viscous);
  source.add_scaled(divergence(convection), -1.0);
  return to_physical_unchecked(gradient(inverse_laplacian(source)));
}

State to_beta_form(const State& state_k) {
  State out = state_k;
  for (double& v : out.beta.values()) v = std::sqrt(std::max(0.0, v));
  return out;
}

Field lift_initial_data(const Field& k0, double eps) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorCode::Validation, "lift parameter must be nonnegative");
  }
  Field out = k0;
  for (double& v : out.values()) {
    if (v < -1e-12) {
      throw Error(ErrorCode::Validation,
                  "initial k has negative values (min " + std::to_string(v) + ")", v);
    }
    if (eps == 0.0) {
      v = std::max(0.0, v);
      continue;
    }
    const double r = std::sqrt(std::max(0.0, v)) + eps;
    v = r * r;
  }
  return out;
}

}  // namespace kolmo
