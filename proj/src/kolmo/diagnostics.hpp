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

#ifndef KOLMO_DIAGNOSTICS_HPP
#define KOLMO_DIAGNOSTICS_HPP

#include <cstddef>
#include <vector>

#include "kolmo/model.hpp"

namespace kolmo {

// All spatial integrals below are means over the torus (the measure is
// normalised to 1), so ||f||^2 = sum_k |c_k|^2.

struct Envelopes {
  double omega_min = 0.0;
  double omega_max = 0.0;
  /// k_* / (omega^* alpha2 + 1)^{1/alpha2}, the form without t.
  double k_min_printed = 0.0;
  /// k_* (1 + alpha2 omega^* t)^{-1/alpha2}, the homogeneous decay.
  double k_min = 0.0;
};

Envelopes envelopes(const DataBounds& bounds, const ModelParams& params, double t);

struct EnvelopeCheck {
  Envelopes env;
  double min_omega = 0.0;
  double max_omega = 0.0;
  /// Signed square min(beta |beta|), so a negative beta shows up as k < 0.
  double min_k = 0.0;
  double margin_lower = 0.0;  // min omega - omega_min(t)
  double margin_upper = 0.0;  // omega_max(t) - max omega
  double margin_k = 0.0;      // min k - k_min(t), informational
  double tol = 0.0;           // 1e-6 omega_*
  bool pass = false;          // margins and min k all >= -tol
};

EnvelopeCheck envelope_check(const State& state, const DataBounds& bounds,
                             const ModelParams& params, Formulation form = Formulation::Beta);

/// Instantaneous ingredients of the L2 budgets.
struct BudgetSample {
  double t = 0.0;
  double u2 = 0.0;          // ||u||^2
  double omega2 = 0.0;      // ||omega||^2
  double beta2 = 0.0;       // ||beta||^2
  double k_l1 = 0.0;        // ||k||_{L1}
  double diss_u = 0.0;      // mean (k/omega)|Du|^2
  double diss_omega = 0.0;  // mean (k/omega)|grad omega|^2
  double omega3 = 0.0;      // mean omega^3
  double k_omega = 0.0;     // mean k omega
  double beta2_omega = 0.0; // mean beta^2 omega
};

BudgetSample budget_sample(const State& state, const ModelParams& params,
                           Formulation form = Formulation::Beta);

/// Signed budget residuals. r33 and r34 are identity defects; r35 and r36
/// are one-sided margins that must stay <= 0.
struct BudgetResiduals {
  double t = 0.0;
  double r33 = 0.0;
  double r34 = 0.0;
  double r35 = 0.0;
  double r36 = 0.0;
};

/// Accumulates trapezoid time integrals over consecutive samples.
class EnergyBudget {
 public:
  explicit EnergyBudget(const ModelParams& params) : params_(params) {}

  void add(const BudgetSample& sample);
  std::size_t size() const noexcept { return count_; }
  /// Residuals at the latest sample (all zero after the first).
  BudgetResiduals residuals() const;

 private:
  ModelParams params_;
  std::size_t count_ = 0;
  BudgetSample first_{}, last_{};
  double int_diss_u_ = 0.0, int_diss_omega_ = 0.0, int_omega3_ = 0.0;
  double int_k_omega_ = 0.0, int_beta2_omega_ = 0.0;
};

/// Residual series over a window; throws Error(InsufficientData) for fewer
/// than two samples.
std::vector<BudgetResiduals> energy_budget(const std::vector<BudgetSample>& window,
                                           const ModelParams& params);

struct SobolevEnergies {
  double E = 0.0;       // E_s
  double F = 0.0;       // F_s
  double bold_E = 0.0;  // L2 part + E_s
};

SobolevEnergies sobolev_energies(const State& state, double s, const ModelParams& params);

/// A(t) of the continuation criterion; [s] = floor(s).
double continuation_integrand(const State& state, double s, const ModelParams& params);

/// min{1, C / (E0 (1 + E0)^{2[s]+3})}, equal to 1 at E0 = 0.
double lifespan_lower_bound(double E0, double s, double C = 1.0);

struct VacuumMeasure {
  double fraction = 0.0;
  std::size_t boundary = 0;
};

VacuumMeasure vacuum_measure(const State& state, double eps_vac);

struct StabilityPoint {
  double t = 0.0;
  double energy = 0.0;          // E(t) = ||U||^2 + ||Sigma||^2 + ||B||^2
  double theta = 0.0;           // Theta_1 + Theta_2 + Theta_3
  double integral_theta = 0.0;  // trapezoid
  double bound = 0.0;           // E(0) exp(C_fit int Theta)
};

struct StabilityReport {
  std::vector<StabilityPoint> series;
  double c_fit = 0.0;  // smallest C making the Gronwall bound hold
  bool holds = true;
};

/// Squared L2 distance between two states.
double twin_energy(const State& a, const State& b);
/// Theta(t) assembled from the L-infinity quantities of the stability
/// estimate, evaluated on a 2x refined grid.
double stability_theta(const State& a, const State& b);

/// Throws Error(Misaligned) unless both trajectories share grid, length and
/// snapshot times.
StabilityReport twin_stability(const std::vector<State>& first, const std::vector<State>& second);

}  // namespace kolmo

#endif  // KOLMO_DIAGNOSTICS_HPP
