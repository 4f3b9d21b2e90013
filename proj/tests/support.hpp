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

// Shared helpers for the test executables: hand-rolled generators and a
// property driver that reports the failing case index.

#ifndef KOLMO_TESTS_SUPPORT_HPP
#define KOLMO_TESTS_SUPPORT_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include <doctest.h>

#include "kolmo/field.hpp"
#include "kolmo/model.hpp"
#include "kolmo/random_fields.hpp"
#include "kolmo/spectral.hpp"

namespace kt {

using kolmo::Field;
using kolmo::Spectrum;
using kolmo::TorusGrid;
using Point = std::array<double, 3>;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  template <typename T>
  T pick(std::initializer_list<T> items) {
    return *(items.begin() + integer(0, static_cast<int>(items.size()) - 1));
  }

 private:
  std::mt19937_64 eng_;
};

/// d in {1, 2, 3}; n chosen so the grid stays small.
inline TorusGrid random_grid(Rng& r) {
  const int d = r.integer(1, 3);
  const int n = d == 3 ? r.pick({8, 16}) : r.pick({8, 16, 32});
  return TorusGrid(d, n);
}

/// Random field whose modes all sit inside the dealiasing band, plus a
/// random mean, so truncation is a no-op.
inline Field band_field(const TorusGrid& g, int comps, Rng& r) {
  const double band = std::max(1.0, std::floor((g.n() - 1) / 3.0) - 0.5);
  Spectrum c = kolmo::random_band_spectrum(g, comps, r.next(), band, r.uniform(0.0, 2.0));
  for (int a = 0; a < comps; ++a) c.component(a)[0] = r.uniform(-1.0, 1.0);
  return kolmo::to_physical(c);
}

/// Band-limited, bounded below by lo on the grid.
inline Field positive_field(const TorusGrid& g, Rng& r, double lo, double amp) {
  Field f = band_field(g, 1, r);
  const double mn = kolmo::min_value(f);
  const double mx = kolmo::max_value(f);
  for (double& v : f.values()) v = lo + amp * (v - mn) / std::max(1e-300, mx - mn);
  return f;
}

inline Point coords(const TorusGrid& g, std::size_t p) {
  Point x{0.0, 0.0, 0.0};
  const auto n = static_cast<std::size_t>(g.n());
  for (int a = g.dim() - 1; a >= 0; --a) {
    x[a] = g.spacing() * static_cast<double>(p % n);
    p /= n;
  }
  return x;
}

/// Samples fn(x, component) on the grid.
inline Field sample(const TorusGrid& g, int comps, const std::function<double(const Point&, int)>& fn) {
  Field f(g, comps);
  for (int a = 0; a < comps; ++a) {
    auto v = f.component(a);
    for (std::size_t p = 0; p < v.size(); ++p) v[p] = fn(coords(g, p), a);
  }
  return f;
}

inline double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  const auto va = a.values();
  const auto vb = b.values();
  REQUIRE(va.size() == vb.size());
  for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

inline double max_abs_spec(const Spectrum& c) {
  double m = 0.0;
  for (const auto& z : c.values()) m = std::max(m, std::abs(z));
  return m;
}

inline kolmo::State make_state(const Field& u, const Field& omega, const Field& beta, double t = 0.0) {
  kolmo::State s;
  s.t = t;
  s.u = u;
  s.omega = omega;
  s.beta = beta;
  return s;
}

/// Runs body on `count` generated cases; the case index is captured so a
/// failure names the seed to replay.
template <typename Body>
void for_all(std::uint64_t seed, int count, Body&& body) {
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = kolmo::mix_seed(seed, static_cast<std::uint64_t>(i));
    CAPTURE(i);
    CAPTURE(s);
    Rng r(s);
    body(r);
  }
}

}  // namespace kt

#endif  // KOLMO_TESTS_SUPPORT_HPP
