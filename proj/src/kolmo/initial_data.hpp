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

#ifndef KOLMO_INITIAL_DATA_HPP
#define KOLMO_INITIAL_DATA_HPP

#include <array>
#include <cstdint>
#include <string>

#include "kolmo/model.hpp"

namespace kolmo {

/// Named initial-data family and its parameters. Only the parameters of the
/// selected family are read.
struct InitialSpec {
  std::string family = "homogeneous";
  double omega0 = 1.0;
  double beta0 = 1.0;
  // taylor_green, single_mode, compact_k
  double amplitude = 1.0;
  // single_mode
  std::string field = "u";
  std::array<int, 3> k{1, 0, 0};
  // random_band
  std::uint64_t seed = 0;
  double band = 4.0;
  double amp_u = 0.5;
  double amp_omega = 0.2;
  double amp_beta = 0.2;
  double decay = 2.0;
  // compact_k
  double vacuum_fraction = 0.5;
  // from_file: snapshot sidecar
  std::string path;
};

/// Builds (u0, omega0, beta0) at t = 0 and applies the lift
/// k0 -> (sqrt(k0) + eps_lift)^2. Throws Error(Validation) for unknown
/// families or parameters that cannot give omega0 > 0, beta0 >= 0.
State make_initial_state(const TorusGrid& grid, const InitialSpec& spec, double eps_lift = 0.0);

/// Radius of a centred ball occupying (1 - vacuum_fraction) of the torus.
double compact_support_radius(int dim, double vacuum_fraction);

}  // namespace kolmo

#endif  // KOLMO_INITIAL_DATA_HPP
