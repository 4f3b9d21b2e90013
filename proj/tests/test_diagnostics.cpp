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

#include <cmath>
#include <numbers>

#include "kolmo/diagnostics.hpp"
#include "kolmo/error.hpp"
#include "kolmo/littlewood_paley.hpp"
#include "kolmo/spectral.hpp"
#include "kolmo/timestepper.hpp"
#include "support.hpp"

using namespace kolmo;
using kt::make_state;
using kt::sample;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected kolmo::Error");
  return ErrorCode::Validation;
}

State homogeneous(const TorusGrid& g, double w0, double b0) {
  return make_state(Field::vector(g), Field::scalar(g, w0), Field::scalar(g, b0));
}

Field shear(const TorusGrid& g, double amp) {
  return sample(g, g.dim(), [&](const kt::Point& x, int a) { return a == 0 ? amp * std::sin(x[1]) : 0.0; });
}

// Weight of |k| = 1 in sum_j 2^{2js} phi(2^-j |k|)^2.
double unit_mode_weight(double s) {
  const DyadicBump phi = build_bump();
  return std::pow(2.0, -2 * s) * std::pow(phi(2.0), 2) + std::pow(phi(1.0), 2);
}

State smooth_state(const TorusGrid& g, double t, double shift) {
  const Field u = sample(g, 2, [&](const kt::Point& x, int a) {
    return a == 0 ? 0.5 * std::sin(x[1]) : 0.3 * std::cos(x[0]);
  });
  const Field w = sample(g, 1, [&](const kt::Point& x, int) { return 2 + 0.5 * std::cos(x[0]) + shift * std::cos(x[0]); });
  const Field b = sample(g, 1, [&](const kt::Point& x, int) { return 1 + 0.2 * std::sin(x[1]); });
  return make_state(u, w, b, t);
}

}  // namespace

TEST_CASE("envelopes") {
  const ModelParams p;
  DataBounds db;
  db.omega_star = 0.5;
  db.omega_upper_star = 2.0;
  db.k_star = 0.25;
  const Envelopes e0 = envelopes(db, p, 0.0);
  CHECK(e0.omega_min == 0.5);
  CHECK(e0.omega_max == 2.0);
  CHECK(e0.k_min == 0.25);
  CHECK(e0.k_min_printed == doctest::Approx(0.25 / 3.0));
  double prev_lo = e0.omega_min, prev_hi = e0.omega_max;
  for (int i = 1; i <= 20; ++i) {
    const Envelopes e = envelopes(db, p, 0.1 * i);
    CHECK(e.omega_min > 0.0);
    CHECK(e.omega_min <= e.omega_max);
    CHECK(e.omega_min < prev_lo);
    CHECK(e.omega_max < prev_hi);
    prev_lo = e.omega_min;
    prev_hi = e.omega_max;
  }
  CHECK(envelopes(db, p, 1.0).omega_min == doctest::Approx(0.5 / 1.5));
  CHECK(envelopes(db, p, 1.0).k_min == doctest::Approx(0.25 / 3.0));
}

TEST_CASE("envelope check") {
  const TorusGrid g(2, 16);
  ModelParams p;
  p.alpha2 = 0.8;
  SUBCASE("initial data sit inside") {
    const State s = smooth_state(g, 0.0, 0.0);
    const EnvelopeCheck c = envelope_check(s, DataBounds::of(s), p);
    CHECK(c.pass);
    CHECK(c.margin_lower >= 0.0);
    CHECK(c.margin_upper >= 0.0);
    CHECK(c.min_k == doctest::Approx(0.64).epsilon(1e-10));
    CHECK(c.tol == doctest::Approx(1e-6 * 1.5).epsilon(1e-8));
  }
  SUBCASE("homogeneous run rides the envelope") {
    const State s0 = homogeneous(g, 1.5, 0.7);
    const DataBounds db = DataBounds::of(s0);
    StepControl c;
    c.t_end = 1.0;
    c.dt_max = 1e-3;
    c.stride = 100;
    run_simulation(s0, p, c, [&](const Sample& smp) {
      const EnvelopeCheck e = envelope_check(*smp.state, db, p);
      CHECK(std::abs(e.margin_lower) <= 1e-8);
      CHECK(std::abs(e.margin_upper) <= 1e-8);
      CHECK(std::abs(e.margin_k) <= 1e-8);
      CHECK(e.pass);
    });
  }
  SUBCASE("negative beta fails the k bound") {
    State s = homogeneous(g, 1.0, 0.5);
    const DataBounds db = DataBounds::of(s);
    s.beta = Field::scalar(g, -0.01);
    const EnvelopeCheck e = envelope_check(s, db, p);
    CHECK(e.min_k == doctest::Approx(-1e-4));
    CHECK_FALSE(e.pass);
  }
}

TEST_CASE("energy budget") {
  const TorusGrid g(2, 32);
  ModelParams p;
  CHECK(code_of([&] { energy_budget({budget_sample(homogeneous(g, 1, 1), p)}, p); }) ==
        ErrorCode::InsufficientData);
  SUBCASE("no flow") {
    StepControl c;
    c.t_end = 0.2;
    c.stride = 2;
    std::vector<BudgetSample> window;
    const State s0 = make_state(Field::vector(g), sample(g, 1, [](const kt::Point& x, int) {
                                  return 2 + std::cos(x[0]);
                                }),
                                Field::scalar(g, 0.5));
    run_simulation(s0, p, c, [&](const Sample& smp) { window.push_back(budget_sample(*smp.state, p)); });
    const auto res = energy_budget(window, p);
    REQUIRE(res.size() == window.size());
    for (const auto& r : res) CHECK(r.r33 == 0.0);
    CHECK(res.front().r34 == 0.0);
  }
  SUBCASE("euler reduction") {
    StepControl c;
    c.t_end = 0.3;
    c.stride = 3;
    std::vector<BudgetSample> window;
    const State s0 = make_state(shear(g, 0.8), Field::scalar(g, 1.0), Field::scalar(g, 0.0));
    run_simulation(s0, p, c, [&](const Sample& smp) { window.push_back(budget_sample(*smp.state, p)); });
    for (const auto& r : energy_budget(window, p)) CHECK(std::abs(r.r33) <= 1e-6);
  }
  SUBCASE("homogeneous samples are integrated by the trapezoid rule") {
    p.alpha2 = 1.0;
    BudgetSample a = budget_sample(homogeneous(g, 2.0, 1.0), p);
    BudgetSample b = budget_sample(homogeneous(g, 1.0, 0.5), p);
    a.t = 0.0;
    b.t = 0.5;
    CHECK(a.omega2 == doctest::Approx(4.0));
    CHECK(a.omega3 == doctest::Approx(8.0));
    CHECK(a.k_omega == doctest::Approx(2.0));
    CHECK(a.beta2_omega == doctest::Approx(2.0));
    const auto res = energy_budget({a, b}, p);
    // 1 + 2 * 0.25 * (8 + 1) - 4
    CHECK(res[1].r34 == doctest::Approx(1.0 + 2 * 0.25 * 9.0 - 4.0));
    // 0.25 + 0.25 * (2 + 0.25) - 1
    CHECK(res[1].r35 == doctest::Approx(0.25 + 0.25 * 2.25 - 1.0));
  }
}

TEST_CASE("sobolev energies") {
  const TorusGrid g(2, 32);
  const ModelParams p;
  const double s = 2.5;
  SUBCASE("constant state") {
    const SobolevEnergies e = sobolev_energies(homogeneous(g, 2.0, 0.5), s, p);
    CHECK(e.E == 0.0);
    CHECK(e.F == 0.0);
    CHECK(e.bold_E == doctest::Approx(4.25).epsilon(1e-14));
  }
  SUBCASE("vanishing beta") {
    const State st = make_state(shear(g, 1.0), sample(g, 1, [](const kt::Point& x, int) {
                                  return 2 + std::cos(x[0]);
                                }),
                                Field::scalar(g, 0.0));
    CHECK(sobolev_energies(st, s, p).F == 0.0);
  }
  SUBCASE("single modes") {
    const double a = 0.6, b = 0.3, w0 = 2.0, c = 0.8;
    const Field w = sample(g, 1, [&](const kt::Point& x, int) { return w0 + b * std::cos(x[0]); });
    const SobolevEnergies e = sobolev_energies(make_state(shear(g, a), w, Field::scalar(g, c)), s, p);
    const double W = unit_mode_weight(s);
    CHECK(e.E == doctest::Approx(W * (a * a + b * b) / 2).epsilon(1e-12));
    CHECK(e.bold_E == doctest::Approx(e.E + a * a / 2 + w0 * w0 + b * b / 2 + c * c).epsilon(1e-12));

    // Constant omega and beta make beta / sqrt(omega) a constant factor.
    const SobolevEnergies f = sobolev_energies(make_state(shear(g, a), Field::scalar(g, w0), Field::scalar(g, c)), s, p);
    CHECK(f.F == doctest::Approx(c * c / w0 * W * a * a / 4).epsilon(1e-12));
  }
}

TEST_CASE("continuation integrand") {
  const ModelParams p;
  CHECK(continuation_integrand(homogeneous(TorusGrid(2, 16), 2.0, 1.0), 2.5, p) == 0.0);
  SUBCASE("shear with constant scalars") {
    const TorusGrid g(2, 16);
    const double a = 0.7;
    const State st = make_state(shear(g, a), Field::scalar(g, 2.0), Field::scalar(g, 1.0));
    // |grad u| = a |cos x2|; (beta / sqrt(omega)) Du has two entries, each
    // with gradient a |sin x2| / (2 sqrt 2).
    CHECK(continuation_integrand(st, 2.5, p) == doctest::Approx(std::pow(a, 6) + a / 2).epsilon(1e-12));
    CHECK(continuation_integrand(st, 3.0, p) == doctest::Approx(std::pow(a, 7) + a / 2).epsilon(1e-12));
  }
  SUBCASE("oversampled maximum oracle") {
    const int n = 64;
    const TorusGrid g(2, n);
    const double a = 0.6;
    const Field w = sample(g, 1, [](const kt::Point& x, int) { return 2 + std::cos(x[0]); });
    const State st = make_state(shear(g, a), w, Field::scalar(g, 1.0));
    const double h = std::numbers::pi / n;
    double m_du = 0.0, m_dw = 0.0;
    for (int i = 0; i < 2 * n; ++i) {
      for (int j = 0; j < 2 * n; ++j) {
        const double x1 = h * i, x2 = h * j;
        const double om = 2 + std::cos(x1);
        const double gam = 1 / std::sqrt(om);
        const double dgam = 0.5 * std::sin(x1) * std::pow(om, -1.5);
        const double d12 = 0.5 * a * std::cos(x2);
        const double g1 = dgam * d12, g2 = -gam * 0.5 * a * std::sin(x2);
        m_du = std::max(m_du, std::sqrt(2 * (g1 * g1 + g2 * g2)));
        m_dw = std::max(m_dw, std::abs(std::cos(x1) * gam + std::sin(x1) * dgam));
      }
    }
    const double expect = std::pow(1 + a * a, 3) + 2 * (m_du + m_dw);
    CHECK(continuation_integrand(st, 2.5, p) == doctest::Approx(expect).epsilon(1e-8));
  }
  CHECK(code_of([] {
          continuation_integrand(homogeneous(TorusGrid(1, 8), 1e-9, 1.0), 2.5, ModelParams{});
        }) == ErrorCode::FloorViolation);
}

TEST_CASE("lifespan lower bound") {
  CHECK(lifespan_lower_bound(0.0, 2.5) == 1.0);
  CHECK(lifespan_lower_bound(1e-12, 2.5) == 1.0);
  CHECK(lifespan_lower_bound(1.0, 2.5, 1.0) == doctest::Approx(1.0 / 128));
  CHECK(lifespan_lower_bound(1.0, 3.0, 1.0) == doctest::Approx(1.0 / 512));
  CHECK(lifespan_lower_bound(1.0, 2.5, 256.0) == 1.0);
  double prev = 1.0;
  for (int i = 0; i <= 200; ++i) {
    const double b = lifespan_lower_bound(0.05 * i, 2.5);
    CHECK(b <= prev);
    CHECK(b > 0.0);
    prev = b;
  }
}

TEST_CASE("vacuum measure") {
  const TorusGrid g(2, 64);
  const VacuumMeasure all = vacuum_measure(homogeneous(g, 1.0, 0.0), 1e-4);
  CHECK(all.fraction == 1.0);
  CHECK(all.boundary == 0);
  CHECK(vacuum_measure(homogeneous(g, 1.0, 1.0), 0.5).fraction == 0.0);

  const Field b = sample(g, 1, [](const kt::Point& x, int) { return std::max(0.0, std::cos(x[0])); });
  const VacuumMeasure v = vacuum_measure(make_state(Field::vector(g), Field::scalar(g, 1.0), b), 1e-6);
  CHECK(std::abs(v.fraction - 0.5) <= 1.0 / 64);
  // One column at each edge of the vacuum strip.
  CHECK(v.boundary == 2 * 64);
}

TEST_CASE("twin stability") {
  const TorusGrid g(2, 16);
  std::vector<State> first, second;
  for (int i = 0; i <= 6; ++i) {
    const double t = 0.1 * i;
    first.push_back(smooth_state(g, t, 0.0));
    second.push_back(smooth_state(g, t, 1e-3 * std::exp(t)));
  }
  SUBCASE("identical trajectories") {
    const StabilityReport r = twin_stability(first, first);
    for (const auto& pt : r.series) CHECK(pt.energy == 0.0);
    CHECK(r.holds);
  }
  SUBCASE("growth is bounded by the fitted constant") {
    const StabilityReport r = twin_stability(first, second);
    REQUIRE(r.series.size() == 7);
    CHECK(r.series[0].energy == doctest::Approx(0.5e-6).epsilon(1e-10));
    CHECK(r.holds);
    double tight = 0.0;
    for (const auto& pt : r.series) {
      CHECK(pt.theta >= 0.0);
      CHECK(pt.bound >= pt.energy * (1 - 1e-12));
      if (pt.t > 0) tight = std::max(tight, pt.energy / pt.bound);
    }
    CHECK(tight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.c_fit > 0.0);
    // The energy ratio is unchanged when the twins swap roles.
    const StabilityReport sw = twin_stability(second, first);
    for (std::size_t i = 0; i < r.series.size(); ++i) {
      CHECK(sw.series[i].energy / sw.series[0].energy == doctest::Approx(r.series[i].energy / r.series[0].energy).epsilon(1e-14));
    }
  }
  SUBCASE("misaligned") {
    std::vector<State> short_run(second.begin(), second.end() - 1);
    CHECK(code_of([&] { twin_stability(first, short_run); }) == ErrorCode::Misaligned);
    std::vector<State> shifted = second;
    shifted[2].t += 1e-3;
    CHECK(code_of([&] { twin_stability(first, shifted); }) == ErrorCode::Misaligned);
  }
}

TEST_CASE("property: twin energy is quadratic in the perturbation") {
  kt::for_all(61, 20, [](kt::Rng& r) {
    const TorusGrid g = kt::random_grid(r);
    const State a = homogeneous(g, 1.0, 1.0);
    const Field pert = kt::band_field(g, 1, r);
    const double delta = r.uniform(1e-6, 1e-1);
    State b = a, c = a;
    b.omega.add_scaled(pert, delta);
    c.omega.add_scaled(pert, 10 * delta);
    const double e1 = twin_energy(a, b), e10 = twin_energy(a, c);
    CHECK(e10 == doctest::Approx(100 * e1).epsilon(1e-9));
    CHECK(twin_energy(b, a) == e1);
    CHECK(twin_energy(a, a) == 0.0);
  });
}

TEST_CASE("property: energies are nonnegative and F vanishes with beta") {
  kt::for_all(62, 20, [](kt::Rng& r) {
    const TorusGrid g(2, r.pick({16, 32}));
    const ModelParams p;
    Field u = kt::band_field(g, 2, r);
    u = leray_project(u);
    const Field w = kt::positive_field(g, r, 0.5, 1.0);
    const Field b = kt::positive_field(g, r, 0.0, 1.0);
    const SobolevEnergies e = sobolev_energies(make_state(u, w, b), 2.5, p);
    CHECK(e.E >= 0.0);
    CHECK(e.F >= 0.0);
    CHECK(e.bold_E >= e.E);
    CHECK(sobolev_energies(make_state(u, w, Field::scalar(g)), 2.5, p).F == 0.0);
    CHECK(continuation_integrand(make_state(u, w, b), 2.5, p) >= 0.0);
  });
}
