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

#ifndef KOLMO_MODEL_HPP
#define KOLMO_MODEL_HPP

#include "kolmo/field.hpp"

namespace kolmo {

struct ModelParams {
  double nu = 1.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double alpha3 = 1.0;
  double alpha4 = 1.0;
  double omega_floor = 1e-6;

  /// Throws Error(Validation) naming the first non-positive constant.
  void validate() const;
};

/// Solution triplet (u, omega, beta) with k = beta^2. In the original
/// formulation the third slot carries k itself; see Formulation.
struct State {
  double t = 0.0;
  Field u;
  Field omega;
  Field beta;

  const TorusGrid& grid() const noexcept { return omega.grid(); }
  Field k() const;
};

enum class Formulation { Beta, Original };

/// Time derivatives of (u, omega, third) where third is beta or k.
struct Tendency {
  Field du;
  Field domega;
  Field dthird;
};

struct DataBounds {
  double omega_star = 0.0;        // min omega_0
  double omega_upper_star = 0.0;  // max omega_0
  double k_star = 0.0;            // min k_0

  /// Extrema of the trigonometric interpolants of the initial fields.
  static DataBounds of(const State& initial, Formulation form = Formulation::Beta);
};

/// Throws Error(FloorViolation) if min omega < omega_floor.
void check_floor(const Field& omega, const ModelParams& params);

/// beta^2 / omega pointwise.
Field eddy_viscosity(const State& state, const ModelParams& params);

Tendency rhs_beta(const State& state, const ModelParams& params);

/// Same system written for k: state.beta holds k.
Tendency rhs_original(const State& state_k, const ModelParams& params);

Tendency rhs(const State& state, const ModelParams& params, Formulation form);

/// -(u.grad)u + nu div((k/omega) Du) before projection. The third slot of
/// the state is interpreted per `form`.
Field momentum_tendency_unprojected(const State& state, const ModelParams& params,
                                    Formulation form = Formulation::Beta);

/// grad pi with T - grad pi divergence-free, T the unprojected momentum
/// tendency.
Field recover_pressure_gradient(const State& state, const ModelParams& params,
                                Formulation form = Formulation::Beta);

/// Converts a k-form state to beta = sqrt(max(k, 0)).
State to_beta_form(const State& state_k);

/// (sqrt(k0) + eps)^2. Values in [-1e-12, 0) are treated as 0; anything
/// more negative throws Error(Validation).
Field lift_initial_data(const Field& k0, double eps);

}  // namespace kolmo

#endif  // KOLMO_MODEL_HPP
