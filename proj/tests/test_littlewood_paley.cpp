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

#include "kolmo/littlewood_paley.hpp"
#include "kolmo/spectral.hpp"
#include "support.hpp"

using namespace kolmo;
using kt::max_diff;
using kt::sample;

namespace {

const DyadicBump& phi() {
  static const DyadicBump b = build_bump();
  return b;
}

double mean_sq(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s / static_cast<double>(f.grid().points());
}

double mean(const Field& f) {
  double s = 0.0;
  for (double v : f.component(0)) s += v;
  return s / static_cast<double>(f.grid().points());
}

Field minus(const Field& a, const Field& b) {
  Field r = a;
  r.add_scaled(b, -1.0);
  return r;
}

}  // namespace

TEST_CASE("bump support and range") {
  CHECK(phi()(0.5) == 0.0);
  CHECK(phi()(DyadicBump::kInner) == 0.0);
  CHECK(phi()(DyadicBump::kOuter) == 0.0);
  CHECK(phi()(3.0) == 0.0);
  CHECK(phi()(0.0) == 0.0);
  CHECK(DyadicBump::chi(1.0) == 1.0);
  CHECK(DyadicBump::chi(DyadicBump::kChiFlat) == 1.0);
  CHECK(DyadicBump::chi(2.5) == 0.0);
  for (int m = 1; m <= 3000; ++m) {
    const double r = 1e-3 * m;
    const double v = phi()(r);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(phi()(-r) == v);
    if (r < DyadicBump::kInner || r > DyadicBump::kOuter) CHECK(v == 0.0);
  }
}

TEST_CASE("partition of unity") {
  CHECK(phi().partition_sum(1.0) == doctest::Approx(1.0).epsilon(1e-10));
  // At r = 2 only phi(1) and phi(2) contribute.
  CHECK(phi()(1.0) + phi()(2.0) == doctest::Approx(1.0).epsilon(1e-10));
  double worst = 0.0, worst_direct = 0.0;
  for (int m = 1; m <= 10000; ++m) {
    const double r = 0.01 * m;
    worst = std::max(worst, std::abs(phi().partition_sum(r) - 1.0));
    double direct = 0.0;
    for (int j = -12; j <= 12; ++j) direct += phi()(std::ldexp(r, -j));
    worst_direct = std::max(worst_direct, std::abs(direct - 1.0));
  }
  CHECK(worst <= 1e-10);
  CHECK(worst_direct <= 1e-10);
}

TEST_CASE("block range on the unit torus") {
  for (int d = 1; d <= 3; ++d) {
    const TorusGrid g(d, 16);
    const auto& dec = decomposition(g);
    CHECK(dec.j_min() == -1);
    CHECK(dec.j_max() >= 2);
    kt::Rng r(3);
    const Field f = kt::band_field(g, 1, r);
    CHECK(max_abs(dec.block(dec.j_min() - 1, f)) == 0.0);
    CHECK(max_abs(dec.block(dec.j_max() + 1, f)) == 0.0);
  }
}

TEST_CASE("blocks of single modes and constants") {
  const TorusGrid g(2, 32);
  const auto& dec = decomposition(g);
  const Field c = Field::scalar(g, 1.7);
  const Field f = sample(g, 1, [](const kt::Point& x, int) { return std::cos(x[1]); });
  for (int j = dec.j_min() - 1; j <= dec.j_max() + 1; ++j) {
    CAPTURE(j);
    CHECK(max_abs(dec.block(j, c)) == 0.0);
    Field expect = f;
    expect *= phi()(std::ldexp(1.0, -j));
    CHECK(max_diff(dec.block(j, f), expect) < 1e-14);
  }
}

TEST_CASE("low-frequency cutoff") {
  const TorusGrid g(1, 32);
  const auto& dec = decomposition(g);
  kt::Rng r(5);
  const Field f = kt::band_field(g, 1, r);
  CHECK(max_diff(dec.low_cut(60, f), f) < 1e-10);
  const Field below = dec.low_cut(dec.j_min() - 1, f);
  for (double v : below.values()) CHECK(v == doctest::Approx(mean(f)).epsilon(1e-12));

  const Field two = sample(g, 1, [](const kt::Point& x, int) { return std::cos(x[0]) + std::cos(8 * x[0]); });
  double w1 = 0.0, w8 = 0.0;
  for (int j = -10; j <= 1; ++j) {
    w1 += phi()(std::ldexp(1.0, -j));
    w8 += phi()(std::ldexp(8.0, -j));
  }
  const Field expect = sample(g, 1, [&](const kt::Point& x, int) {
    return w1 * std::cos(x[0]) + w8 * std::cos(8 * x[0]);
  });
  CHECK(w1 == doctest::Approx(1.0));
  CHECK(max_diff(dec.low_cut(2, two), expect) < 1e-12);
}

TEST_CASE("sobolev norms: closed forms") {
  const TorusGrid g(2, 32);
  const Field c = Field::scalar(g, -2.5);
  CHECK(sobolev_norm(c, 2.0, SobolevVariant::Homogeneous) == 0.0);
  CHECK(sobolev_norm(c, 2.0, SobolevVariant::Classical) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(sobolev_norm(c, 2.0, SobolevVariant::Full) == doctest::Approx(2.5).epsilon(1e-14));

  const Field f = sample(g, 1, [](const kt::Point& x, int) { return std::cos(x[0]); });
  for (double s : {0.0, 1.0, 2.5, 3.0}) {
    CAPTURE(s);
    CHECK(sobolev_norm(f, s, SobolevVariant::Classical) == doctest::Approx(std::pow(2.0, (s - 1) / 2)).epsilon(1e-12));
    // |k| = 1 meets blocks j = -1 and j = 0.
    const double hom = 0.5 * (std::pow(2.0, -2 * s) * std::pow(phi()(2.0), 2) + std::pow(phi()(1.0), 2));
    CHECK(sobolev_norm(f, s, SobolevVariant::Homogeneous) == doctest::Approx(std::sqrt(hom)).epsilon(1e-12));
    CHECK(sobolev_norm(f, s, SobolevVariant::Full) == doctest::Approx(std::sqrt(0.5 + hom)).epsilon(1e-12));
  }
}

TEST_CASE("commutators") {
  const TorusGrid g(2, 32);
  const auto& dec = decomposition(g);
  const Field a = sample(g, 1, [](const kt::Point& x, int) { return std::cos(x[0]); });
  const Field f = a;
  for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
    CAPTURE(j);
    // a d1 f = -sin(2 x1)/2 and a Delta_j d1 f = -phi(2^-j) sin(2 x1)/2.
    const double w = -0.5 * (phi()(std::ldexp(2.0, -j)) - phi()(std::ldexp(1.0, -j)));
    const Field expect = sample(g, 1, [&](const kt::Point& x, int) { return w * std::sin(2 * x[0]); });
    CHECK(max_diff(commutator_block(j, a, f, FirstOrder::partial(0)), expect) < 1e-12);
  }

  kt::Rng r(17);
  const Field h = kt::band_field(g, 1, r);
  const Field u = kt::band_field(g, 2, r);
  for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
    CHECK(max_abs(commutator_block(j, Field::scalar(g, 3.0), h, FirstOrder::gradient())) < 1e-12);
    CHECK(max_abs(commutator_block(j, Field::scalar(g, -1.0), u, FirstOrder::sym_gradient())) < 1e-12);
    CHECK(max_abs(transport_commutator_block(j, Field::vector(g, 0.4), h)) < 1e-12);
  }
  CHECK_THROWS(commutator_block(0, Field::scalar(TorusGrid(2, 16)), h, FirstOrder::gradient()));
}

TEST_CASE("s_quantity") {
  const TorusGrid g(2, 32);
  kt::Rng r(23);
  const Field f = kt::band_field(g, 1, r);
  const Field grad = apply_derivative(f, DerivativeOp::Gradient);
  CHECK(s_quantity(Field::scalar(g), f, FirstOrder::gradient(), 2.0) == 0.0);
  const double hom = sobolev_norm(grad, 2.0, SobolevVariant::Homogeneous);
  CHECK(s_quantity(Field::scalar(g, 1.0), f, FirstOrder::gradient(), 2.0) ==
        doctest::Approx(hom * hom).epsilon(1e-11));
  CHECK(s_quantity(Field::scalar(g, 2.0), f, FirstOrder::gradient(), 2.0) ==
        doctest::Approx(4 * hom * hom).epsilon(1e-11));

  // Against a direct evaluation on the collocation grid, which is exact here
  // because alpha and f use only the lowest third of the modes.
  const TorusGrid fine(2, 64);
  const auto& dec = decomposition(fine);
  auto refine = [&](const Field& x) {
    Spectrum c(fine, x.components());
    const Spectrum src = to_spectral(x);
    const auto& t = mode_tables(g);
    for (int a = 0; a < x.components(); ++a) {
      for (std::size_t i = 0; i < t.k.size(); ++i) c.component(a)[packed_index(fine, {static_cast<int>(t.k[i][0]), static_cast<int>(t.k[i][1]),
                                                           static_cast<int>(t.k[i][2])})] = src.component(a)[i];
    }
    return to_physical(c);
  };
  const Field alpha = kt::positive_field(g, r, 0.2, 1.0);
  const Field af = refine(alpha), gf = refine(grad);
  double direct = 0.0;
  for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
    const Field b = dec.block(j, gf);
    double m = 0.0;
    for (std::size_t p = 0; p < fine.points(); ++p) {
      double q = 0.0;
      for (int c = 0; c < 2; ++c) q += b.component(c)[p] * b.component(c)[p];
      m += af.component(0)[p] * af.component(0)[p] * q;
    }
    direct += std::pow(2.0, 4.0 * j) * m / static_cast<double>(fine.points());
  }
  CHECK(s_quantity(alpha, f, FirstOrder::gradient(), 2.0) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("property: reconstruction and block range") {
  kt::for_all(31, 40, [](kt::Rng& r) {
    const TorusGrid g = kt::random_grid(r);
    const auto& dec = decomposition(g);
    const Field f = kt::band_field(g, r.pick({1, g.dim()}), r);
    Field sum(g, f.components());
    for (int a = 0; a < f.components(); ++a) {
      for (double& v : sum.component(a)) v = 0.0;
    }
    const Spectrum mean_part = [&] {
      Spectrum c = to_spectral(f);
      for (int a = 0; a < c.components(); ++a) {
        for (std::size_t i = 1; i < c.component(a).size(); ++i) c.component(a)[i] = 0.0;
      }
      return c;
    }();
    sum += to_physical(mean_part);
    for (int j = dec.j_min(); j <= dec.j_max(); ++j) sum += dec.block(j, f);
    CHECK(max_diff(sum, f) <= 1e-10);
    CHECK(max_abs(dec.block(dec.j_max() + 1, f)) == 0.0);
    CHECK(max_abs(dec.block(dec.j_min() - 1, f)) == 0.0);
  });
}

TEST_CASE("property: almost orthogonality") {
  kt::for_all(32, 20, [](kt::Rng& r) {
    const TorusGrid g = kt::random_grid(r);
    const auto& dec = decomposition(g);
    const Field f = kt::band_field(g, 1, r);
    for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
      for (int jp = dec.j_min(); jp <= dec.j_max(); ++jp) {
        if (std::abs(j - jp) < 2) continue;
        CHECK(max_abs(dec.block(j, dec.block(jp, f))) <= 1e-12);
      }
    }
  });
}

TEST_CASE("property: block energies bracket the variance") {
  // phi_j + phi_{j+1} = 1 on each ring, so sum phi^2 lies in [1/2, 1].
  kt::for_all(33, 40, [](kt::Rng& r) {
    const TorusGrid g = kt::random_grid(r);
    const Field f = kt::band_field(g, 1, r);
    const auto e = decomposition(g).block_energies(to_spectral(f));
    double total = 0.0;
    for (double v : e) total += v;
    const double var = mean_sq(minus(f, Field::scalar(g, mean(f))));
    CHECK(total <= var * (1 + 1e-12));
    CHECK(total >= 0.5 * var * (1 - 1e-12));
  });
}

TEST_CASE("property: dyadic and classical norms are equivalent") {
  double lo = 1e300, hi = 0.0;
  kt::for_all(34, 100, [&](kt::Rng& r) {
    const TorusGrid g = kt::random_grid(r);
    const Field f = kt::band_field(g, 1, r);
    const double full = sobolev_norm(f, 2.0, SobolevVariant::Full);
    const double cls = sobolev_norm(f, 2.0, SobolevVariant::Classical);
    REQUIRE(cls > 0.0);
    lo = std::min(lo, full / cls);
    hi = std::max(hi, full / cls);
  });
  MESSAGE("full/classical ratio in [" << lo << ", " << hi << "]");
  CHECK(lo >= 0.2);
  CHECK(hi <= 5.0);
}

TEST_CASE("property: commutator vanishes for constant coefficients") {
  kt::for_all(35, 20, [](kt::Rng& r) {
    TorusGrid g = kt::random_grid(r);
    const auto& dec = decomposition(g);
    const Field f = kt::band_field(g, 1, r);
    const Field c = Field::scalar(g, r.uniform(-2.0, 2.0));
    for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
      CHECK(max_abs(commutator_block(j, c, f, FirstOrder::gradient())) <= 1e-12 * std::max(1.0, max_abs(f)) * g.n());
    }
  });
}
