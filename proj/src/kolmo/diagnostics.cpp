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

#include "kolmo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include "kolmo/error.hpp"
#include "kolmo/littlewood_paley.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo {

namespace {

Spectrum concat(std::initializer_list<const Spectrum*> parts) {
  int total = 0;
  for (const Spectrum* p : parts) total += p->components();
  Spectrum out((*parts.begin())->grid(), total);
  int c = 0;
  for (const Spectrum* p : parts) {
    for (int q = 0; q < p->components(); ++q, ++c) {
      const auto src = p->component(q);
      std::copy(src.begin(), src.end(), out.component(c).begin());
    }
  }
  return out;
}

// mean over the grid of w * |g|^2 (w scalar samples).
double weighted_grid_mean(std::span<const double> w, const Field& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double g2 = 0.0;
    for (int c = 0; c < g.components(); ++c) g2 += g.component(c)[i] * g.component(c)[i];
    s += w[i] * g2;
  }
  return s / static_cast<double>(w.size());
}

Field viscosity(const State& state, Formulation form) {
  Field a = Field::scalar(state.grid());
  const auto w = state.omega.component(0);
  const auto b = state.beta.component(0);
  auto v = a.component(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = form == Formulation::Beta ? b[i] * b[i] / w[i] : b[i] / w[i];
  }
  return a;
}

double trapezoid(double t0, double f0, double t1, double f1) { return 0.5 * (t1 - t0) * (f0 + f1); }

}  // namespace

Envelopes envelopes(const DataBounds& bounds, const ModelParams& params, double t) {
  const double a2 = params.alpha2;
  Envelopes e;
  e.omega_min = bounds.omega_star / (bounds.omega_star * a2 * t + 1.0);
  e.omega_max = bounds.omega_upper_star / (bounds.omega_upper_star * a2 * t + 1.0);
  e.k_min_printed = bounds.k_star / std::pow(bounds.omega_upper_star * a2 + 1.0, 1.0 / a2);
  e.k_min = bounds.k_star * std::pow(1.0 + a2 * bounds.omega_upper_star * t, -1.0 / a2);
  return e;
}

EnvelopeCheck envelope_check(const State& state, const DataBounds& bounds,
                             const ModelParams& params, Formulation form) {
  EnvelopeCheck c;
  c.env = envelopes(bounds, params, state.t);
  const Spectrum w = to_spectral(state.omega);
  const Spectrum b = to_spectral(state.beta);
  c.min_omega = extremum(w, false).value;
  c.max_omega = extremum(w, true).value;
  const double bmin = extremum(b, false).value;
  c.min_k = form == Formulation::Beta ? bmin * std::abs(bmin) : bmin;
  c.margin_lower = c.min_omega - c.env.omega_min;
  c.margin_upper = c.env.omega_max - c.max_omega;
  c.margin_k = c.min_k - c.env.k_min;
  c.tol = 1e-6 * bounds.omega_star;
  c.pass = c.margin_lower >= -c.tol && c.margin_upper >= -c.tol && c.min_k >= -c.tol;
  return c;
}

BudgetSample budget_sample(const State& state, const ModelParams& params, Formulation form) {
  check_floor(state.omega, params);
  BudgetSample s;
  s.t = state.t;
  const Spectrum uh = to_spectral(state.u);
  s.u2 = mean_square(uh);
  s.omega2 = mean_square(to_spectral(state.omega));

  const auto w = state.omega.component(0);
  const auto b = state.beta.component(0);
  const std::size_t np = w.size();
  double k_l1 = 0.0, omega3 = 0.0, k_omega = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    const double k = form == Formulation::Beta ? b[i] * b[i] : b[i];
    k_l1 += std::abs(k);
    omega3 += w[i] * w[i] * w[i];
    k_omega += k * w[i];
  }
  s.k_l1 = k_l1 / static_cast<double>(np);
  s.omega3 = omega3 / static_cast<double>(np);
  s.k_omega = k_omega / static_cast<double>(np);
  s.beta2_omega = s.k_omega;
  s.beta2 = form == Formulation::Beta ? mean_square(to_spectral(state.beta)) : s.k_l1;

  const Field a = viscosity(state, form);
  s.diss_u = weighted_grid_mean(a.component(0), to_physical_unchecked(sym_gradient(uh)));
  s.diss_omega = weighted_grid_mean(
      a.component(0), to_physical_unchecked(gradient(to_spectral(state.omega))));
  return s;
}

void EnergyBudget::add(const BudgetSample& x) {
  if (count_ == 0) {
    first_ = x;
  } else {
    const auto& p = last_;
    int_diss_u_ += trapezoid(p.t, p.diss_u, x.t, x.diss_u);
    int_diss_omega_ += trapezoid(p.t, p.diss_omega, x.t, x.diss_omega);
    int_omega3_ += trapezoid(p.t, p.omega3, x.t, x.omega3);
    int_k_omega_ += trapezoid(p.t, p.k_omega, x.t, x.k_omega);
    int_beta2_omega_ += trapezoid(p.t, p.beta2_omega, x.t, x.beta2_omega);
  }
  last_ = x;
  ++count_;
}

BudgetResiduals EnergyBudget::residuals() const {
  BudgetResiduals r;
  if (count_ == 0) return r;
  const auto& p = params_;
  const double production = p.alpha4 / (2.0 * p.nu) * first_.u2;
  r.t = last_.t;
  r.r33 = last_.u2 + 2.0 * p.nu * int_diss_u_ - first_.u2;
  r.r34 = last_.omega2 + 2.0 * p.alpha1 * int_diss_omega_ + 2.0 * p.alpha2 * int_omega3_ -
          first_.omega2;
  r.r35 = last_.k_l1 + int_k_omega_ - production - first_.k_l1;
  r.r36 = last_.beta2 + int_beta2_omega_ - production - first_.beta2;
  return r;
}

std::vector<BudgetResiduals> energy_budget(const std::vector<BudgetSample>& window,
                                           const ModelParams& params) {
  if (window.size() < 2) {
    throw Error(ErrorCode::InsufficientData, "energy budget needs at least two snapshots");
  }
  EnergyBudget budget(params);
  std::vector<BudgetResiduals> out;
  out.reserve(window.size());
  for (const auto& s : window) {
    budget.add(s);
    out.push_back(budget.residuals());
  }
  return out;
}

SobolevEnergies sobolev_energies(const State& state, double s, const ModelParams& params) {
  check_floor(state.omega, params);
  const auto& dec = decomposition(state.grid());
  const Spectrum uh = to_spectral(state.u);
  const Spectrum wh = to_spectral(state.omega);
  const Spectrum bh = to_spectral(state.beta);
  const Spectrum all = concat({&uh, &wh, &bh});

  SobolevEnergies e;
  const auto blocks = dec.block_energies(all);
  for (std::size_t q = 0; q < blocks.size(); ++q) {
    e.E += std::exp2(2.0 * (dec.j_min() + static_cast<int>(q)) * s) * blocks[q];
  }
  e.bold_E = mean_square(all) + e.E;

  if (max_abs(state.beta) == 0.0) return e;
  const Field a = viscosity(state, Formulation::Beta);
  const Spectrum sym = sym_gradient(uh);
  const Spectrum gw = gradient(wh);
  const Spectrum gb = gradient(bh);
  const Spectrum grads = concat({&sym, &gw, &gb});
  for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
    const Field g = to_physical_unchecked(dec.block(j, grads));
    e.F += std::exp2(2.0 * j * s) * weighted_grid_mean(a.component(0), g);
  }
  return e;
}

double continuation_integrand(const State& state, double s, const ModelParams& params) {
  check_floor(state.omega, params);
  const double fs = std::floor(s);
  const Spectrum uh = to_spectral(state.u);
  const Spectrum gu = gradient(uh);
  const Spectrum gw = gradient(to_spectral(state.omega));
  const Spectrum gb = gradient(to_spectral(state.beta));

  const double g_all = linf_norm(concat({&gu, &gw, &gb}));
  const double g_omega = linf_norm(gw);
  const double g_beta = linf_norm(gb);

  // gamma = beta / sqrt(omega) at the collocation points.
  Field gamma = Field::scalar(state.grid());
  {
    const auto w = state.omega.component(0);
    const auto b = state.beta.component(0);
    auto v = gamma.component(0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = b[i] / std::sqrt(w[i]);
  }
  double sum = 0.0;
  if (max_abs(gamma) > 0.0) {
    const Field fields[] = {to_physical_unchecked(sym_gradient(uh)), to_physical_unchecked(gw),
                            to_physical_unchecked(gb)};
    for (const Field& g : fields) {
      Field prod(g.grid(), g.components());
      for (int c = 0; c < g.components(); ++c) {
        const auto src = g.component(c);
        auto dst = prod.component(c);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = gamma.component(0)[i] * src[i];
      }
      sum += linf_norm(gradient(to_spectral(prod)));
    }
  }
  return std::pow(g_all, fs + 4.0) + (1.0 + g_beta) * (1.0 + std::pow(g_omega, fs)) * sum;
}

double lifespan_lower_bound(double E0, double s, double C) {
  if (!(E0 > 0.0)) return 1.0;
  const double p = 2.0 * std::floor(s) + 3.0;
  return std::min(1.0, C / (E0 * std::pow(1.0 + E0, p)));
}

VacuumMeasure vacuum_measure(const State& state, double eps_vac) {
  const TorusGrid& g = state.grid();
  const int d = g.dim();
  const int n = g.n();
  const auto b = state.beta.component(0);
  const std::size_t np = b.size();
  std::vector<unsigned char> below(np);
  std::size_t count = 0;
  for (std::size_t i = 0; i < np; ++i) {
    below[i] = b[i] * b[i] < eps_vac ? 1 : 0;
    count += below[i];
  }
  std::array<std::size_t, 3> stride{};
  stride[d - 1] = 1;
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<std::size_t>(n);
  VacuumMeasure m;
  m.fraction = static_cast<double>(count) / static_cast<double>(np);
  for (std::size_t p = 0; p < np; ++p) {
    if (!below[p]) continue;
    bool edge = false;
    for (int a = 0; a < d && !edge; ++a) {
      const std::size_t ia = (p / stride[a]) % static_cast<std::size_t>(n);
      const std::size_t base = p - ia * stride[a];
      edge = !below[base + ((ia + 1) % n) * stride[a]] ||
             !below[base + ((ia + n - 1) % n) * stride[a]];
    }
    if (edge) ++m.boundary;
  }
  return m;
}

double twin_energy(const State& a, const State& b) {
  Field du = a.u, dw = a.omega, db = a.beta;
  du.add_scaled(b.u, -1.0);
  dw.add_scaled(b.omega, -1.0);
  db.add_scaled(b.beta, -1.0);
  return mean_square(to_spectral(du)) + mean_square(to_spectral(dw)) +
         mean_square(to_spectral(db));
}

double stability_theta(const State& s1, const State& s2) {
  const Spectrum gu1 = gradient(to_spectral(s1.u));
  const Spectrum gu2 = gradient(to_spectral(s2.u));
  const Spectrum gw1 = gradient(to_spectral(s1.omega));
  const Spectrum gw2 = gradient(to_spectral(s2.omega));
  const Spectrum gb1 = gradient(to_spectral(s1.beta));
  const Spectrum gb2 = gradient(to_spectral(s2.beta));
  const double G_u = linf_norm(concat({&gu1, &gu2}));
  const double G_w = linf_norm(concat({&gw1, &gw2}));
  const double G_ub = linf_norm(concat({&gu1, &gu2, &gb1, &gb2}));

  const Field w1 = oversample(to_spectral(s1.omega), 2);
  const Field w2 = oversample(to_spectral(s2.omega), 2);
  const Field b1 = oversample(to_spectral(s1.beta), 2);
  const Field b2 = oversample(to_spectral(s2.beta), 2);
  double q_b1_w2sw1 = 0.0;  // beta1 / (omega2 sqrt(omega1))
  double q_sw1_w2 = 0.0;    // sqrt(omega1) / omega2
  double q_inv_w2 = 0.0;    // 1 / omega2
  double q_inv_both = 0.0;  // |(1/omega1, 1/omega2)|
  double q_b1_w1w2 = 0.0;   // beta1 / (omega1 omega2)
  double q_betas = 0.0;     // |(beta1, beta2)|
  for (std::size_t i = 0; i < w1.grid().points(); ++i) {
    const double o1 = w1.component(0)[i];
    const double o2 = w2.component(0)[i];
    const double be1 = b1.component(0)[i];
    const double be2 = b2.component(0)[i];
    q_b1_w2sw1 = std::max(q_b1_w2sw1, std::abs(be1 / (o2 * std::sqrt(o1))));
    q_sw1_w2 = std::max(q_sw1_w2, std::abs(std::sqrt(o1) / o2));
    q_inv_w2 = std::max(q_inv_w2, std::abs(1.0 / o2));
    q_inv_both = std::max(q_inv_both, std::hypot(1.0 / o1, 1.0 / o2));
    q_b1_w1w2 = std::max(q_b1_w1w2, std::abs(be1 / (o1 * o2)));
    q_betas = std::max(q_betas, std::hypot(be1, be2));
  }
  const double common = q_b1_w2sw1 * q_b1_w2sw1 + q_sw1_w2 * q_sw1_w2;
  const double theta1 = G_u + G_u * G_u * (common + q_inv_w2);
  const double theta2 = G_w + G_w * G_w * (common + q_inv_w2);
  const double theta3 = G_ub + q_betas + G_ub * G_ub * (common + q_inv_both + q_b1_w1w2);
  return theta1 + theta2 + theta3;
}

StabilityReport twin_stability(const std::vector<State>& first, const std::vector<State>& second) {
  if (first.size() != second.size() || first.empty()) {
    throw Error(ErrorCode::Misaligned, "twin trajectories have different lengths");
  }
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (!(first[i].grid() == second[i].grid())) {
      throw Error(ErrorCode::Misaligned, "twin trajectories live on different grids");
    }
    const double dt = std::abs(first[i].t - second[i].t);
    if (dt > 1e-12 * std::max(1.0, std::abs(first[i].t))) {
      throw Error(ErrorCode::Misaligned, "twin snapshot times differ", dt);
    }
  }
  StabilityReport r;
  r.series.resize(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    auto& p = r.series[i];
    p.t = first[i].t;
    p.energy = twin_energy(first[i], second[i]);
    p.theta = stability_theta(first[i], second[i]);
    p.integral_theta =
        i == 0 ? 0.0
               : r.series[i - 1].integral_theta +
                     trapezoid(r.series[i - 1].t, r.series[i - 1].theta, p.t, p.theta);
  }
  // Smallest constant for which the bound holds at every sample; negative
  // when the twin distance decays faster than exp(-|C| int Theta).
  const double e0 = r.series.front().energy;
  bool fitted = false;
  if (e0 > 0.0) {
    for (const auto& p : r.series) {
      if (p.integral_theta > 0.0 && p.energy > 0.0) {
        const double c = std::log(p.energy / e0) / p.integral_theta;
        r.c_fit = fitted ? std::max(r.c_fit, c) : c;
        fitted = true;
      }
    }
  }
  for (auto& p : r.series) {
    p.bound = e0 * std::exp(r.c_fit * p.integral_theta);
    if (p.energy > p.bound * (1.0 + 1e-12)) r.holds = false;
  }
  return r;
}

}  // namespace kolmo
