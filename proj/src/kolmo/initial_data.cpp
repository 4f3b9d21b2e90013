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

#include "kolmo/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "kolmo/error.hpp"
#include "kolmo/io.hpp"
#include "kolmo/random_fields.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo {

namespace {

constexpr double kPi = std::numbers::pi;

// Calls f(point index, coordinates) for every grid point.
template <typename F>
void for_each_point(const TorusGrid& g, F&& f) {
  const int d = g.dim();
  const int n = g.n();
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (std::size_t p = 0; p < g.points(); ++p) {
    std::size_t rest = p;
    for (int a = d - 1; a >= 0; --a) {
      x[a] = g.spacing() * static_cast<double>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    f(p, x);
  }
}

void fill_taylor_green(Field& u, double amplitude) {
  const TorusGrid& g = u.grid();
  if (g.dim() == 1) {
    throw Error(ErrorCode::Validation, "taylor_green needs d >= 2");
  }
  for_each_point(g, [&](std::size_t p, const std::array<double, 3>& x) {
    const double cz = g.dim() == 3 ? std::cos(x[2]) : 1.0;
    u.component(0)[p] = amplitude * std::sin(x[0]) * std::cos(x[1]) * cz;
    u.component(1)[p] = -amplitude * std::cos(x[0]) * std::sin(x[1]) * cz;
  });
}

State constant_state(const TorusGrid& grid, double omega0, double beta0) {
  State s;
  s.u = Field::vector(grid);
  s.omega = Field::scalar(grid, omega0);
  s.beta = Field::scalar(grid, beta0);
  return s;
}

void require_positive(double omega0, double beta0) {
  if (!(omega0 > 0.0)) throw Error(ErrorCode::Validation, "initial.omega0 must be positive");
  if (!(beta0 >= 0.0)) throw Error(ErrorCode::Validation, "initial.beta0 must be nonnegative");
}

}  // namespace

double compact_support_radius(int dim, double vacuum_fraction) {
  if (!(vacuum_fraction > 0.0 && vacuum_fraction < 1.0)) {
    throw Error(ErrorCode::Validation, "initial.vacuum_fraction must lie in (0, 1)");
  }
  const double unit_ball = dim == 1 ? 2.0 : dim == 2 ? kPi : 4.0 * kPi / 3.0;
  const double volume = (1.0 - vacuum_fraction) * std::pow(2.0 * kPi, dim);
  const double r = std::pow(volume / unit_ball, 1.0 / dim);
  if (!(r < kPi)) {
    throw Error(ErrorCode::Validation,
                "initial.vacuum_fraction too small: the support ball would not fit the torus");
  }
  return r;
}

State make_initial_state(const TorusGrid& grid, const InitialSpec& spec, double eps_lift) {
  const int d = grid.dim();
  State s;
  const std::string& fam = spec.family;
  if (fam == "homogeneous") {
    require_positive(spec.omega0, spec.beta0);
    s = constant_state(grid, spec.omega0, spec.beta0);
  } else if (fam == "taylor_green") {
    require_positive(spec.omega0, spec.beta0);
    s = constant_state(grid, spec.omega0, spec.beta0);
    fill_taylor_green(s.u, spec.amplitude);
  } else if (fam == "single_mode") {
    require_positive(spec.omega0, spec.beta0);
    s = constant_state(grid, spec.omega0, spec.beta0);
    std::array<double, 3> k{};
    double k2 = 0.0;
    for (int a = 0; a < d; ++a) {
      if (std::abs(spec.k[a]) >= grid.n() / 2) {
        throw Error(ErrorCode::Validation, "initial.k exceeds the grid's resolved band");
      }
      k[a] = spec.k[a];
      k2 += k[a] * k[a];
    }
    if (k2 == 0.0) throw Error(ErrorCode::Validation, "initial.k must be nonzero");
    if (spec.field == "u") {
      if (d == 1) throw Error(ErrorCode::Validation, "a divergence-free single mode needs d >= 2");
      std::array<double, 3> e{};
      if (d == 2) {
        e = {-k[1], k[0], 0.0};
      } else {
        // k x z, or k x x when k is parallel to z.
        e = {k[1], -k[0], 0.0};
        if (e[0] == 0.0 && e[1] == 0.0) e = {0.0, k[2], -k[1]};
      }
      const double en = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
      for_each_point(grid, [&](std::size_t p, const std::array<double, 3>& x) {
        const double phase = k[0] * x[0] + k[1] * x[1] + k[2] * x[2];
        for (int a = 0; a < d; ++a) s.u.component(a)[p] = spec.amplitude * e[a] / en * std::sin(phase);
      });
    } else if (spec.field == "omega" || spec.field == "beta") {
      Field& f = spec.field == "omega" ? s.omega : s.beta;
      for_each_point(grid, [&](std::size_t p, const std::array<double, 3>& x) {
        f.component(0)[p] += spec.amplitude * std::cos(k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
      });
    } else {
      throw Error(ErrorCode::Validation,
                  "initial.field must be one of u, omega, beta (got \"" + spec.field + "\")");
    }
  } else if (fam == "random_band") {
    require_positive(spec.omega0, spec.beta0);
    s = constant_state(grid, spec.omega0, spec.beta0);
    if (d >= 2 && spec.amp_u != 0.0) {
      Field u = leray_project(random_band_field(grid, d, mix_seed(spec.seed, 0), spec.band, spec.decay));
      const double m = max_abs(u);
      if (m > 0.0) u *= spec.amp_u / m;
      s.u = u;
    }
    s.omega.add_scaled(random_band_field(grid, 1, mix_seed(spec.seed, 1), spec.band, spec.decay),
                       spec.amp_omega);
    s.beta.add_scaled(random_band_field(grid, 1, mix_seed(spec.seed, 2), spec.band, spec.decay),
                      spec.amp_beta);
  } else if (fam == "compact_k") {
    require_positive(spec.omega0, 0.0);
    s = constant_state(grid, spec.omega0, 0.0);
    const double r = compact_support_radius(d, spec.vacuum_fraction);
    for_each_point(grid, [&](std::size_t p, const std::array<double, 3>& x) {
      double rho2 = 0.0;
      for (int a = 0; a < d; ++a) rho2 += (x[a] - kPi) * (x[a] - kPi);
      rho2 /= r * r;
      s.beta.component(0)[p] = rho2 < 1.0 ? spec.amplitude * std::exp(1.0 - 1.0 / (1.0 - rho2)) : 0.0;
    });
    if (d >= 2 && spec.amp_u != 0.0) fill_taylor_green(s.u, spec.amp_u);
  } else if (fam == "from_file") {
    s = read_snapshot(spec.path);
    if (!(s.grid() == grid)) {
      throw Error(ErrorCode::Validation, "snapshot " + spec.path + " does not match the grid");
    }
    s.t = 0.0;
  } else {
    throw Error(ErrorCode::Validation, "unknown initial-data family \"" + fam + "\"");
  }

  if (eps_lift > 0.0) {
    s.beta = lift_initial_data(s.k(), eps_lift);
    for (double& v : s.beta.values()) v = std::sqrt(v);
  } else if (eps_lift < 0.0) {
    throw Error(ErrorCode::Validation, "eps_lift must be nonnegative");
  }
  s.t = 0.0;
  return s;
}

}  // namespace kolmo
