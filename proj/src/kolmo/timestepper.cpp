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

#include "kolmo/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "kolmo/diagnostics.hpp"
#include "kolmo/error.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// y = x + h * k, componentwise over the triplet.
State axpy(const State& x, double h, const Tendency& k) {
  State y = x;
  y.u.add_scaled(k.du, h);
  y.omega.add_scaled(k.domega, h);
  y.beta.add_scaled(k.dthird, h);
  return y;
}

double clamp_field(Field& f, double floor) {
  double sum = 0.0;
  for (double& v : f.values()) {
    if (v < floor) {
      const double lift = floor - v;
      sum += lift * lift;
      v = floor;
    }
  }
  return std::sqrt(sum / static_cast<double>(f.values().size()));
}

}  // namespace

void StepControl::validate(int dim) const {
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw Error(ErrorCode::Validation, "cfl_safety must lie in (0, 1] (got " + fmt(cfl_safety) + ")");
  }
  if (!(dt_min > 0.0)) throw Error(ErrorCode::Validation, "dt_min must be positive");
  if (!(dt_max >= dt_min)) {
    throw Error(ErrorCode::Validation, "dt_min must not exceed dt_max (got dt_min = " +
                                           fmt(dt_min) + ", dt_max = " + fmt(dt_max) + ")");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::Validation, "t_end must be a nonnegative number");
  }
  if (stride < 1) throw Error(ErrorCode::Validation, "stride must be at least 1");
  const double smin = 1.0 + dim / 2.0;
  if (!(s > smin)) {
    throw Error(ErrorCode::Validation, "s must exceed 1 + d/2 = " + fmt(smin) +
                                           (smin == std::floor(smin) ? ".0" : "") + " (got " +
                                           fmt(s) + ")");
  }
  if (!(blowup_threshold > 0.0)) {
    throw Error(ErrorCode::Validation, "blowup_threshold must be positive");
  }
}

double compute_dt(const State& state, const ModelParams& params, const StepControl& control,
                  Formulation form) {
  const std::size_t np = state.grid().points();
  const int d = state.grid().dim();
  double umax2 = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += state.u.component(a)[i] * state.u.component(a)[i];
    umax2 = std::max(umax2, s);
  }
  double vmax = 0.0;
  const auto w = state.omega.component(0);
  const auto b = state.beta.component(0);
  for (std::size_t i = 0; i < np; ++i) {
    vmax = std::max(vmax, form == Formulation::Beta ? b[i] * b[i] / w[i] : b[i] / w[i]);
  }
  const double dx = state.grid().spacing();
  double dt = control.dt_max;
  if (umax2 > 0.0) dt = std::min(dt, control.cfl_safety * dx / std::sqrt(umax2));
  if (vmax > 0.0) {
    const double coeff = std::max({params.nu, params.alpha1, params.alpha3});
    dt = std::min(dt, control.cfl_safety * dx * dx / (2.0 * d * coeff * vmax));
  }
  if (!(dt >= control.dt_min)) {
    throw Error(ErrorCode::BlowUp, "time step collapsed to " + fmt(dt) + " below dt_min", dt);
  }
  return dt;
}

State rk4_step(const State& s, double dt, const ModelParams& params, Formulation form) {
  if (!(dt > 0.0)) throw Error(ErrorCode::Validation, "rk4_step needs dt > 0");
  const Tendency k1 = rhs(s, params, form);
  State s2 = axpy(s, 0.5 * dt, k1);
  s2.t = s.t + 0.5 * dt;
  const Tendency k2 = rhs(s2, params, form);
  State s3 = axpy(s, 0.5 * dt, k2);
  s3.t = s2.t;
  const Tendency k3 = rhs(s3, params, form);
  State s4 = axpy(s, dt, k3);
  s4.t = s.t + dt;
  const Tendency k4 = rhs(s4, params, form);

  State out = s;
  const double h = dt / 6.0;
  for (const auto& [k, w] : {std::pair{&k1, 1.0}, {&k2, 2.0}, {&k3, 2.0}, {&k4, 1.0}}) {
    out.u.add_scaled(k->du, h * w);
    out.omega.add_scaled(k->domega, h * w);
    out.beta.add_scaled(k->dthird, h * w);
  }
  out.t = s.t + dt;
  if (!all_finite(out.u) || !all_finite(out.omega) || !all_finite(out.beta)) {
    throw Error(ErrorCode::BlowUp, "non-finite state after RK4 step");
  }
  out.u = leray_project(out.u);
  return out;
}

ClampReport enforce_positivity(State& state, const ModelParams& params,
                               const ClampReport& previous) {
  ClampReport r = previous;
  r.omega_step = clamp_field(state.omega, params.omega_floor);
  r.beta_step = clamp_field(state.beta, 0.0);
  r.omega_total += r.omega_step;
  r.beta_total += r.beta_step;
  return r;
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Completed: return "completed";
    case StopReason::NonFinite: return "non-finite";
    case StopReason::StepCollapse: return "step-collapse";
    case StopReason::FloorViolation: return "floor-violation";
    case StopReason::IntegralThreshold: return "integral-threshold";
  }
  return "unknown";
}

void validate_initial_state(const State& s, const ModelParams& params) {
  std::vector<std::string> problems;
  if (s.u.components() != s.grid().dim()) problems.push_back("u must have d components");
  if (!all_finite(s.u) || !all_finite(s.omega) || !all_finite(s.beta)) {
    problems.push_back("initial fields contain non-finite values");
  }
  if (problems.empty()) {
    const Field div = apply_derivative(s.u, DerivativeOp::Divergence);
    const double dmax = max_abs(div);
    if (dmax > 1e-9 * std::max(1.0, max_abs(s.u))) {
      problems.push_back("div u0 = 0 violated (max |div u0| = " + fmt(dmax) + ")");
    }
    const double wmin = min_value(s.omega);
    if (!(wmin > 0.0)) problems.push_back("omega0 must be positive (min " + fmt(wmin) + ")");
    else if (wmin < params.omega_floor) {
      problems.push_back("omega0 below omega_floor (min " + fmt(wmin) + ")");
    }
    const double bmin = min_value(s.beta);
    if (bmin < -1e-12) problems.push_back("beta0 must be nonnegative (min " + fmt(bmin) + ")");
  }
  if (!problems.empty()) {
    std::string msg = "initial data violates:";
    for (const auto& p : problems) msg += " " + p + ";";
    msg.pop_back();
    throw Error(ErrorCode::Validation, msg);
  }
}

double clip_to_end(double t, double dt, double t_end) {
  const double remaining = t_end - t;
  return remaining <= dt * (1.0 + 1e-9) ? remaining : dt;
}

RunResult run_simulation(const State& initial, const ModelParams& params,
                         const StepControl& control, const SampleObserver& observer,
                         Formulation form) {
  params.validate();
  control.validate(initial.grid().dim());
  validate_initial_state(initial, params);

  RunResult result;
  State s = initial;
  ClampReport clamp;
  std::size_t step = 0;
  std::size_t last_sampled = 0;
  double last_dt = 0.0;
  double prev_t = s.t;
  auto integrand = [&](const State& st) {
    return form == Formulation::Beta ? continuation_integrand(st, control.s, params)
                                     : continuation_integrand(to_beta_form(st), control.s, params);
  };
  double prev_A = integrand(s);
  double integral_A = 0.0;

  auto emit = [&](double A, bool final) {
    if (!observer) return;
    Sample smp;
    smp.state = &s;
    smp.step = step;
    smp.dt = last_dt;
    smp.clamp = clamp;
    smp.A = A;
    smp.integral_A = integral_A;
    smp.final = final;
    observer(smp);
  };
  emit(prev_A, control.t_end <= s.t);

  const double t_tol = 1e-12 * std::max(1.0, std::abs(control.t_end));
  while (control.t_end - s.t > t_tol) {
    double dt = 0.0;
    try {
      dt = clip_to_end(s.t, compute_dt(s, params, control, form), control.t_end);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BlowUp) throw;
      result.reason = StopReason::StepCollapse;
      result.message = e.what();
      break;
    }
    try {
      const bool last = dt == control.t_end - s.t;
      State next = rk4_step(s, dt, params, form);
      if (last) next.t = control.t_end;
      clamp = enforce_positivity(next, params, clamp);
      s = std::move(next);
      last_dt = dt;
      ++step;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::FloorViolation) {
        result.reason = StopReason::FloorViolation;
      } else if (e.code() == ErrorCode::BlowUp || e.code() == ErrorCode::InvalidField) {
        result.reason = StopReason::NonFinite;
      } else {
        throw;
      }
      result.message = e.what();
      break;
    }
    const bool done = control.t_end - s.t <= t_tol;
    if (step % static_cast<std::size_t>(control.stride) == 0 || done) {
      double A = 0.0;
      try {
        A = integrand(s);
      } catch (const Error& e) {
        result.reason = StopReason::FloorViolation;
        result.message = e.what();
        break;
      }
      integral_A += 0.5 * (s.t - prev_t) * (prev_A + A);
      prev_t = s.t;
      prev_A = A;
      last_sampled = step;
      const bool over = !(integral_A <= control.blowup_threshold);
      emit(A, done || over);
      if (over) {
        result.reason = StopReason::IntegralThreshold;
        result.message = "integral of A(t) exceeded " + fmt(control.blowup_threshold);
        break;
      }
    }
  }
  if (result.reason != StopReason::Completed && last_sampled != step) {
    // Report the last good state.
    double A = prev_A;
    try {
      A = integrand(s);
      integral_A += 0.5 * (s.t - prev_t) * (prev_A + A);
    } catch (const Error&) {
    }
    emit(A, true);
  }
  result.final_state = std::move(s);
  result.steps = step;
  result.clamp = clamp;
  result.integral_A = integral_A;
  return result;
}

}  // namespace kolmo
