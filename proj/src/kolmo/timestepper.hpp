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

#ifndef KOLMO_TIMESTEPPER_HPP
#define KOLMO_TIMESTEPPER_HPP

#include <cstddef>
#include <functional>
#include <string>

#include "kolmo/model.hpp"

namespace kolmo {

struct StepControl {
  double cfl_safety = 0.5;
  double dt_max = 1e-2;
  double dt_min = 1e-10;
  double t_end = 1.0;
  int stride = 10;  // steps between diagnostic samples
  double s = 2.5;
  double blowup_threshold = 1e3;  // on the running integral of A(t)

  /// Throws Error(Validation) naming the violated constraint.
  void validate(int dim) const;
};

/// Clamping applied by enforce_positivity. Step magnitudes are RMS over the
/// grid of the amount added; totals accumulate them over the run.
struct ClampReport {
  double omega_step = 0.0;
  double beta_step = 0.0;
  double omega_total = 0.0;
  double beta_total = 0.0;

  double total() const noexcept { return omega_total + beta_total; }
  bool zero() const noexcept { return total() == 0.0; }
};

/// min(cfl dx / max|u|, cfl dx^2 / (2d max(nu, alpha1, alpha3) max visc),
/// dt_max); inactive constraints are skipped. Throws Error(BlowUp) when the
/// result falls below dt_min.
double compute_dt(const State& state, const ModelParams& params, const StepControl& control,
                  Formulation form = Formulation::Beta);

/// Classical RK4 on the chosen formulation; u is re-projected after the
/// final combination. Throws Error(BlowUp) on non-finite stages.
State rk4_step(const State& state, double dt, const ModelParams& params,
               Formulation form = Formulation::Beta);

/// Lifts omega to omega_floor and the third field to 0 in place.
ClampReport enforce_positivity(State& state, const ModelParams& params,
                               const ClampReport& previous = {});

enum class StopReason { Completed, NonFinite, StepCollapse, FloorViolation, IntegralThreshold };

const char* to_string(StopReason reason);

struct Sample {
  const State* state = nullptr;
  std::size_t step = 0;
  double dt = 0.0;  // last step taken (0 at t = 0)
  ClampReport clamp;
  double A = 0.0;
  double integral_A = 0.0;
  bool final = false;
};

struct RunResult {
  StopReason reason = StopReason::Completed;
  std::string message;
  State final_state;
  std::size_t steps = 0;
  ClampReport clamp;
  double integral_A = 0.0;

  bool blew_up() const noexcept { return reason != StopReason::Completed; }
};

using SampleObserver = std::function<void(const Sample&)>;

/// Steps until t_end or a blow-up signal. The observer sees t = 0, every
/// `stride` steps, and the last state. Validates the initial data first
/// (Error(Validation) listing every violated hypothesis).
RunResult run_simulation(const State& initial, const ModelParams& params,
                         const StepControl& control, const SampleObserver& observer = {},
                         Formulation form = Formulation::Beta);

/// Throws Error(Validation) if div u != 0, min omega <= 0 or min beta < 0.
void validate_initial_state(const State& initial, const ModelParams& params);

/// Next step size honouring t_end: the remaining interval is taken whole
/// when it is within one step.
double clip_to_end(double t, double dt, double t_end);

}  // namespace kolmo

#endif  // KOLMO_TIMESTEPPER_HPP
