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

#include "kolmo/oracles.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "kolmo/diagnostics.hpp"
#include "kolmo/error.hpp"
#include "kolmo/littlewood_paley.hpp"
#include "kolmo/model.hpp"
#include "kolmo/random_fields.hpp"
#include "kolmo/spectral.hpp"
#include "kolmo/timestepper.hpp"

namespace kolmo::oracle {

namespace {

using Vec3 = std::array<double, 3>;
using Cplx = std::complex<double>;
using ScalarFn = std::function<double(const Vec3&)>;

Result make(const char* name, const char* description, double error, double tolerance) {
  return {name, description, error, tolerance, std::isfinite(error) && error <= tolerance};
}

Vec3 point(const TorusGrid& g, std::size_t p) {
  Vec3 x{0.0, 0.0, 0.0};
  const auto n = static_cast<std::size_t>(g.n());
  for (int a = g.dim() - 1; a >= 0; --a) {
    x[a] = g.spacing() * static_cast<double>(p % n);
    p /= n;
  }
  return x;
}

// Full-lattice wavevector for flat index q, each axis in [-n/2, n/2).
std::array<int, 3> lattice_k(const TorusGrid& g, std::size_t q) {
  std::array<int, 3> k{0, 0, 0};
  const int n = g.n();
  for (int a = g.dim() - 1; a >= 0; --a) {
    k[a] = static_cast<int>(q % static_cast<std::size_t>(n)) - n / 2;
    q /= static_cast<std::size_t>(n);
  }
  return k;
}

std::size_t lattice_index(const TorusGrid& g, const std::array<int, 3>& k) {
  std::size_t q = 0;
  for (int a = 0; a < g.dim(); ++a) q = q * g.n() + static_cast<std::size_t>(k[a] + g.n() / 2);
  return q;
}

double phase(const std::array<int, 3>& k, const Vec3& x) { return k[0] * x[0] + k[1] * x[1] + k[2] * x[2]; }

// O(N^2) forward transform, c_k = N^-1 sum_x f(x) e^{-ik.x}.
std::vector<Cplx> direct_dft(const TorusGrid& g, std::span<const double> f) {
  const std::size_t N = g.points();
  std::vector<Cplx> c(N);
  for (std::size_t q = 0; q < N; ++q) {
    const auto k = lattice_k(g, q);
    Cplx acc = 0.0;
    for (std::size_t p = 0; p < N; ++p) acc += f[p] * std::polar(1.0, -phase(k, point(g, p)));
    c[q] = acc / static_cast<double>(N);
  }
  return c;
}

bool in_band(const TorusGrid& g, const std::array<int, 3>& k) {
  for (int a = 0; a < g.dim(); ++a) {
    if (3 * std::abs(k[a]) >= g.n()) return false;
  }
  return true;
}

// Fourth-order central difference of g along axis a.
double fd(const ScalarFn& g, const Vec3& x, int a) {
  constexpr double h = 1e-3;
  auto at = [&](double s) {
    Vec3 y = x;
    y[a] += s * h;
    return g(y);
  };
  return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
}

struct Manufactured {
  std::array<ScalarFn, 2> u;
  ScalarFn omega, beta;
};

State sample(const TorusGrid& g, const Manufactured& m) {
  State s;
  s.u = Field::vector(g);
  s.omega = Field::scalar(g);
  s.beta = Field::scalar(g);
  for (std::size_t p = 0; p < g.points(); ++p) {
    const Vec3 x = point(g, p);
    for (int a = 0; a < 2; ++a) s.u.component(a)[p] = m.u[a](x);
    s.omega.component(0)[p] = m.omega(x);
    s.beta.component(0)[p] = m.beta(x);
  }
  return s;
}

// Largest deviation between rhs() and finite differences of the written-out
// equations at every grid point, d = 2.
double fd_deviation(const Manufactured& m, const ModelParams& P, Formulation form) {
  const TorusGrid g(2, 64);
  State s = sample(g, m);
  ScalarFn third = m.beta;
  if (form == Formulation::Original) {
    third = [&m](const Vec3& x) { return m.beta(x) * m.beta(x); };
    for (double& v : s.beta.values()) v = v * v;
  }
  const Tendency lib = rhs(s, P, form);
  const Field mom = momentum_tendency_unprojected(s, P, form);

  const ScalarFn& W = m.omega;
  const ScalarFn a = [&](const Vec3& x) { return m.beta(x) * m.beta(x) / W(x); };
  auto D = [&](int i, int j, const Vec3& x) { return 0.5 * (fd(m.u[i], x, j) + fd(m.u[j], x, i)); };
  auto D2 = [&](const Vec3& x) {
    double s2 = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s2 += D(i, j, x) * D(i, j, x);
    return s2;
  };
  auto transport = [&](const ScalarFn& f, const Vec3& x) {
    return m.u[0](x) * fd(f, x, 0) + m.u[1](x) * fd(f, x, 1);
  };
  // div(c grad f)
  auto diffusion = [&](const ScalarFn& c, const ScalarFn& f, const Vec3& x) {
    double acc = 0.0;
    for (int j = 0; j < 2; ++j) {
      const ScalarFn flux = [&, j](const Vec3& y) { return c(y) * fd(f, y, j); };
      acc += fd(flux, x, j);
    }
    return acc;
  };

  double err = 0.0;
  for (std::size_t p = 0; p < g.points(); ++p) {
    const Vec3 x = point(g, p);
    for (int i = 0; i < 2; ++i) {
      double visc = 0.0;
      for (int j = 0; j < 2; ++j) {
        const ScalarFn flux = [&, i, j](const Vec3& y) { return a(y) * D(i, j, y); };
        visc += fd(flux, x, j);
      }
      const double expect = -transport(m.u[i], x) + P.nu * visc;
      err = std::max(err, std::abs(expect - mom.component(i)[p]));
    }
    const double w = W(x);
    const double dw = -transport(W, x) + P.alpha1 * diffusion(a, W, x) - P.alpha2 * w * w;
    err = std::max(err, std::abs(dw - lib.domega.component(0)[p]));
    double d3 = 0.0;
    if (form == Formulation::Beta) {
      const double b = m.beta(x);
      const double gb2 = fd(m.beta, x, 0) * fd(m.beta, x, 0) + fd(m.beta, x, 1) * fd(m.beta, x, 1);
      d3 = -transport(m.beta, x) + P.alpha3 * diffusion(a, m.beta, x) - 0.5 * b * w +
           0.5 * P.alpha4 * (b / w) * D2(x) + P.alpha3 * (b / w) * gb2;
    } else {
      const double k = third(x);
      d3 = -transport(third, x) + P.alpha3 * diffusion(a, third, x) - k * w +
           P.alpha4 * (k / w) * D2(x);
    }
    err = std::max(err, std::abs(d3 - lib.dthird.component(0)[p]));
  }
  return err;
}

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"series", "convolution", "fd_rhs",
                                             "homogeneous", "partition", "leray",
                                             "pressure", "lp_mode",  "vacuum"};
  return n;
}

Result run(const std::string& name) {
  if (name == "series") return series();
  if (name == "convolution") return convolution();
  if (name == "fd_rhs") return fd_rhs();
  if (name == "homogeneous") return homogeneous();
  if (name == "partition") return partition();
  if (name == "leray") return leray();
  if (name == "pressure") return pressure();
  if (name == "lp_mode") return lp_mode();
  if (name == "vacuum") return vacuum();
  std::string all;
  for (const auto& n : names()) all += (all.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::Validation, "unknown oracle \"" + name + "\" (expected one of " + all + ")");
}

Result series() {
  const TorusGrid g(2, 16);
  Spectrum c(g, 1);
  const std::array<int, 3> k1{1, 2, 0}, k2{-3, 1, 0};
  const Cplx c1(0.3, -0.2), c2(0.5, 0.0);
  c.component(0)[packed_index(g, k1)] = c1;
  c.component(0)[packed_index(g, k2)] = c2;
  const Field f = to_physical(c);
  double err = 0.0;
  for (std::size_t m = 0; m < 16; ++m) {
    const std::size_t p = (17 * m) % g.points();
    const Vec3 x = point(g, p);
    const double expect = 2.0 * (c1 * std::polar(1.0, phase(k1, x))).real() +
                          2.0 * (c2 * std::polar(1.0, phase(k2, x))).real();
    err = std::max(err, std::abs(expect - f.component(0)[p]));
  }
  return make("series", "two-mode spectrum against direct series summation at 16 points", err, 1e-12);
}

Result convolution() {
  double err = 0.0;
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  for (int n : {8, 16}) {
    const TorusGrid g(2, n);
    const std::size_t N = g.points();
    Field f = Field::scalar(g), h = Field::scalar(g);
    for (double& v : f.values()) v = normal(rng);
    for (double& v : h.values()) v = normal(rng);
    auto F = direct_dft(g, f.component(0));
    auto H = direct_dft(g, h.component(0));
    for (std::size_t q = 0; q < N; ++q) {
      if (!in_band(g, lattice_k(g, q))) F[q] = H[q] = 0.0;
    }
    const Field prod = dealias_product(f, h);
    const auto got = direct_dft(g, prod.component(0));
    for (std::size_t q = 0; q < N; ++q) {
      const auto k = lattice_k(g, q);
      Cplx expect = 0.0;
      if (in_band(g, k)) {
        for (std::size_t r = 0; r < N; ++r) {
          const auto p = lattice_k(g, r);
          const std::array<int, 3> rest{k[0] - p[0], k[1] - p[1], 0};
          if (std::abs(rest[0]) * 3 >= n || std::abs(rest[1]) * 3 >= n) continue;
          expect += F[r] * H[lattice_index(g, rest)];
        }
      }
      err = std::max(err, std::abs(expect - got[q]));
    }
  }
  // cos x1 * cos x1 = 1/2 + 1/2 cos 2x1
  {
    const TorusGrid g(1, 8);
    Field c = Field::scalar(g);
    for (std::size_t p = 0; p < g.points(); ++p) c.component(0)[p] = std::cos(point(g, p)[0]);
    const Field sq = dealias_product(c, c);
    for (std::size_t p = 0; p < g.points(); ++p) {
      const double x = point(g, p)[0];
      err = std::max(err, std::abs(sq.component(0)[p] - (0.5 + 0.5 * std::cos(2.0 * x))));
    }
  }
  return make("convolution", "dealiased products against direct lattice convolution of truncated spectra",
              err, 1e-12);
}

Result fd_rhs() {
  const ModelParams P;
  Manufactured plain;
  plain.u = {[](const Vec3& x) { return std::sin(x[1]); }, [](const Vec3&) { return 0.0; }};
  plain.omega = [](const Vec3& x) { return 2.0 + std::cos(x[0]); };
  plain.beta = [](const Vec3&) { return 1.0; };
  Manufactured rich;
  rich.u = {[](const Vec3& x) { return std::sin(x[1]); },
            [](const Vec3& x) { return 0.5 * std::cos(x[0]); }};
  rich.omega = [](const Vec3& x) { return 3.0 + std::cos(x[0]) + 0.5 * std::sin(x[1]); };
  rich.beta = [](const Vec3& x) { return 1.0 + 0.3 * std::sin(x[0] + x[1]); };
  double err = fd_deviation(plain, P, Formulation::Beta);
  err = std::max(err, fd_deviation(rich, P, Formulation::Beta));
  err = std::max(err, fd_deviation(rich, P, Formulation::Original));
  return make("fd_rhs", "right-hand sides against finite differences of the written-out equations", err,
              1e-6);
}

Result homogeneous() {
  const TorusGrid g(2, 16);
  const ModelParams P;
  StepControl control;
  control.dt_max = 1e-3;
  control.t_end = 1.0;
  control.stride = 1000;
  double err = 0.0;
  for (Formulation form : {Formulation::Beta, Formulation::Original}) {
    State s;
    s.u = Field::vector(g);
    s.omega = Field::scalar(g, 1.0);
    s.beta = Field::scalar(g, 1.0);  // beta = k = 1
    const RunResult r = run_simulation(s, P, control, {}, form);
    const double t = r.final_state.t;
    const double w_exact = 1.0 / (1.0 + P.alpha2 * t);
    const double k_exact = std::pow(1.0 + P.alpha2 * t, -1.0 / P.alpha2);
    const Field k = form == Formulation::Beta ? r.final_state.k() : r.final_state.beta;
    for (std::size_t p = 0; p < g.points(); ++p) {
      err = std::max(err, std::abs(r.final_state.omega.component(0)[p] - w_exact));
      err = std::max(err, std::abs(k.component(0)[p] - k_exact));
    }
    err = std::max(err, std::abs(t - 1.0));
  }
  return make("homogeneous", "constant data against the closed-form Riccati and k decay at t = 1", err,
              1e-8);
}

Result partition() {
  const DyadicBump phi = build_bump();
  double err = 0.0;
  for (int m = 1; m <= 10000; ++m) {
    const double r = 0.01 * m;
    double sum = 0.0;
    for (int j = -16; j <= 40; ++j) sum += phi(std::ldexp(r, -j));
    err = std::max(err, std::abs(sum - 1.0));
  }
  return make("partition", "sum over j of phi(2^-j r) for r = 0.01 .. 100", err, 1e-10);
}

Result leray() {
  const TorusGrid g(3, 16);
  const auto& t = mode_tables(g);
  const Spectrum phi = random_band_spectrum(g, 1, 7, 6.0, 1.0);
  const Spectrum grad = gradient(phi);
  const double scale = std::max(1.0, linf_norm(grad));
  double err = linf_norm(leray_project(grad)) / scale;
  const Spectrum v = random_band_spectrum(g, 3, 8, 6.0, 1.0);
  const Spectrum pv = leray_project(v);
  for (std::size_t i = 0; i < t.k.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      Cplx expect = v.component(a)[i];
      if (t.k2[i] > 0.0) {
        Cplx kv = 0.0;
        for (int b = 0; b < 3; ++b) kv += t.k[i][b] * v.component(b)[i];
        expect -= t.k[i][a] * kv / t.k2[i];
      }
      err = std::max(err, std::abs(expect - pv.component(a)[i]));
    }
  }
  return make("leray", "projection annihilates gradients and matches I - kk^T/|k|^2 per mode", err, 1e-12);
}

Result pressure() {
  const TorusGrid g(2, 16);
  const ModelParams P;
  Manufactured m;
  m.u = {[](const Vec3& x) { return std::sin(x[1]); }, [](const Vec3& x) { return std::sin(x[0]); }};
  m.omega = [](const Vec3& x) { return 2.0 + std::cos(x[0]); };
  m.beta = [](const Vec3&) { return 1.0; };
  const State s = sample(g, m);
  const Field T = momentum_tendency_unprojected(s, P);
  const Field lib = recover_pressure_gradient(s, P);
  const std::size_t N = g.points();
  std::array<std::vector<Cplx>, 2> That{direct_dft(g, T.component(0)), direct_dft(g, T.component(1))};
  // grad pi per mode: k (k . T_k) / |k|^2
  std::array<std::vector<Cplx>, 2> G{std::vector<Cplx>(N), std::vector<Cplx>(N)};
  for (std::size_t q = 0; q < N; ++q) {
    const auto k = lattice_k(g, q);
    const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1];
    if (k2 == 0.0 || k[0] == -g.n() / 2 || k[1] == -g.n() / 2) continue;
    const Cplx kt = double(k[0]) * That[0][q] + double(k[1]) * That[1][q];
    for (int a = 0; a < 2; ++a) G[a][q] = double(k[a]) * kt / k2;
  }
  double err = 0.0;
  for (std::size_t p = 0; p < N; ++p) {
    const Vec3 x = point(g, p);
    for (int a = 0; a < 2; ++a) {
      Cplx acc = 0.0;
      for (std::size_t q = 0; q < N; ++q) acc += G[a][q] * std::polar(1.0, phase(lattice_k(g, q), x));
      err = std::max(err, std::abs(acc.real() - lib.component(a)[p]));
    }
  }
  return make("pressure", "pressure gradient against a per-mode solve of the Poisson equation", err, 1e-12);
}

Result lp_mode() {
  const TorusGrid g(2, 64);
  const DyadicDecomposition& dec = decomposition(g);
  const DyadicBump phi = build_bump();
  const double s = 2.5;
  double err = 0.0;
  for (int m : {1, 3, 8, 16}) {
    Field f = Field::scalar(g);
    for (std::size_t p = 0; p < g.points(); ++p) f.component(0)[p] = std::cos(m * point(g, p)[0]);
    const Spectrum c = to_spectral(f);
    const auto e = dec.block_energies(c);
    for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
      const double w = phi(std::ldexp(double(m), -j));
      err = std::max(err, std::abs(e[static_cast<std::size_t>(j - dec.j_min())] - 0.5 * w * w));
    }
    const double classical = std::pow(1.0 + double(m) * m, 0.5 * s) / std::sqrt(2.0);
    err = std::max(err, std::abs(sobolev_norm(c, s, SobolevVariant::Classical) / classical - 1.0));
  }
  return make("lp_mode", "single-mode block energies and classical norm against coefficient arithmetic",
              err, 1e-12);
}

Result vacuum() {
  const TorusGrid g(2, 64);
  State s;
  s.u = Field::vector(g);
  s.omega = Field::scalar(g, 1.0);
  s.beta = Field::scalar(g);
  std::size_t count = 0;
  for (std::size_t p = 0; p < g.points(); ++p) {
    const double b = std::max(0.0, std::cos(point(g, p)[0]));
    s.beta.component(0)[p] = b;
    if (b * b < 1e-12) ++count;
  }
  const VacuumMeasure vm = vacuum_measure(s, 1e-12);
  const double direct = double(count) / double(g.points());
  double err = std::abs(vm.fraction - 0.5);
  if (vm.fraction != direct) err = std::numeric_limits<double>::infinity();
  return make("vacuum", "vacuum fraction of max(0, cos x1) against direct counting", err, 1.0 / g.n());
}

}  // namespace kolmo::oracle
