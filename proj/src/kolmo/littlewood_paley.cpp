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

#include "kolmo/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "kolmo/error.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo {

namespace {

double psi(double t) noexcept { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = psi(t);
  return a / (a + psi(1.0 - t));
}

Field component_of(const Field& f, int c) {
  Field out = Field::scalar(f.grid());
  const auto src = f.component(c);
  std::copy(src.begin(), src.end(), out.component(0).begin());
  return out;
}

}  // namespace

double DyadicBump::chi(double r) noexcept {
  r = std::abs(r);
  return smooth_step((kOuter - r) / (kOuter - kChiFlat));
}

double DyadicBump::operator()(double r) const noexcept {
  r = std::abs(r);
  if (r <= kInner || r >= kOuter) return 0.0;
  return chi(r) - chi(2.0 * r);
}

double DyadicBump::partition_sum(double r) const noexcept {
  r = std::abs(r);
  if (r == 0.0) return 0.0;
  // phi(2^-j r) != 0 only for log2(r / kOuter) < j < log2(r / kInner).
  const int lo = static_cast<int>(std::floor(std::log2(r / kOuter))) - 1;
  const int hi = static_cast<int>(std::ceil(std::log2(r / kInner))) + 1;
  double s = 0.0;
  for (int j = lo; j <= hi; ++j) s += (*this)(std::ldexp(r, -j));
  return s;
}

DyadicBump build_bump() { return DyadicBump{}; }

Spectrum apply_first_order(const FirstOrder& op, const Spectrum& f) {
  switch (op.kind) {
    case FirstOrder::Kind::Identity: return f;
    case FirstOrder::Kind::Partial:
      if (op.axis < 0 || op.axis >= f.grid().dim()) {
        throw Error(ErrorCode::Shape, "partial derivative axis out of range");
      }
      return partial(f, op.axis);
    case FirstOrder::Kind::Gradient: return gradient(f);
    case FirstOrder::Kind::SymGradient: return sym_gradient(f);
  }
  throw Error(ErrorCode::Shape, "unknown first-order operator");
}

DyadicDecomposition::DyadicDecomposition(const TorusGrid& grid) : grid_(grid) {
  const auto& t = mode_tables(grid);
  const std::size_t m = grid.modes();
  jlo_.assign(m, 0);
  w_.assign(m, {0.0, 0.0});
  j_min_ = std::numeric_limits<int>::max();
  j_max_ = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < m; ++i) {
    if (t.k2[i] == 0.0 || t.nyquist[i]) continue;
    const double r = std::sqrt(t.k2[i]);
    const int lo = static_cast<int>(std::floor(std::log2(r / DyadicBump::kOuter))) + 1;
    jlo_[i] = lo;
    for (int q = 0; q < 2; ++q) {
      const double w = bump_(std::ldexp(r, -(lo + q)));
      w_[i][q] = w;
      if (w > 0.0) {
        j_min_ = std::min(j_min_, lo + q);
        j_max_ = std::max(j_max_, lo + q);
      }
    }
  }
  if (j_min_ > j_max_) j_min_ = j_max_ = 0;
}

double DyadicDecomposition::weight(int j, std::size_t mode) const noexcept {
  const int q = j - jlo_[mode];
  return q == 0 || q == 1 ? w_[mode][q] : 0.0;
}

Spectrum DyadicDecomposition::block(int j, const Spectrum& f) const {
  require_same_grid(grid_, f.grid(), "dyadic_block");
  Spectrum out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = weight(j, i) * src[i];
  }
  return out;
}

Field DyadicDecomposition::block(int j, const Field& f) const {
  return to_physical_unchecked(block(j, to_spectral(f)));
}

Spectrum DyadicDecomposition::low_cut(int N, const Spectrum& f) const {
  require_same_grid(grid_, f.grid(), "low_freq_cutoff");
  Spectrum out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    auto dst = out.component(c);
    dst[0] = src[0];
    for (std::size_t i = 1; i < src.size(); ++i) {
      double w = 0.0;
      for (int q = 0; q < 2; ++q) {
        if (jlo_[i] + q <= N - 1) w += w_[i][q];
      }
      dst[i] = w * src[i];
    }
  }
  return out;
}

Field DyadicDecomposition::low_cut(int N, const Field& f) const {
  return to_physical_unchecked(low_cut(N, to_spectral(f)));
}

std::vector<double> DyadicDecomposition::block_energies(const Spectrum& f) const {
  require_same_grid(grid_, f.grid(), "block_energies");
  const auto& t = mode_tables(grid_);
  std::vector<double> e(static_cast<std::size_t>(j_max_ - j_min_ + 1), 0.0);
  for (int c = 0; c < f.components(); ++c) {
    const auto v = f.component(c);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double a = t.weight[i] * std::norm(v[i]);
      if (a == 0.0) continue;
      for (int q = 0; q < 2; ++q) {
        const double w = w_[i][q];
        if (w > 0.0) e[static_cast<std::size_t>(jlo_[i] + q - j_min_)] += w * w * a;
      }
    }
  }
  return e;
}

const DyadicDecomposition& decomposition(const TorusGrid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<DyadicDecomposition>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{grid.dim(), grid.n()}];
  if (!slot) slot = std::make_unique<DyadicDecomposition>(grid);
  return *slot;
}

double sobolev_norm(const Spectrum& f, double s, SobolevVariant variant) {
  if (variant == SobolevVariant::Classical) {
    const auto& t = mode_tables(f.grid());
    double sum = 0.0;
    for (int c = 0; c < f.components(); ++c) {
      const auto v = f.component(c);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (t.weight[i] == 0.0) continue;
        sum += t.weight[i] * std::pow(1.0 + t.k2[i], s) * std::norm(v[i]);
      }
    }
    return std::sqrt(sum);
  }
  const auto& dec = decomposition(f.grid());
  const auto e = dec.block_energies(f);
  double sum = variant == SobolevVariant::Full ? mean_square(f) : 0.0;
  for (std::size_t q = 0; q < e.size(); ++q) {
    const int j = dec.j_min() + static_cast<int>(q);
    sum += std::exp2(2.0 * j * s) * e[q];
  }
  return std::sqrt(sum);
}

double sobolev_norm(const Field& f, double s, SobolevVariant variant) {
  return sobolev_norm(to_spectral(f), s, variant);
}

Field commutator_block(int j, const Field& a, const Field& f, const FirstOrder& op) {
  require_same_grid(a.grid(), f.grid(), "commutator_block");
  if (a.components() != 1) throw Error(ErrorCode::Shape, "commutator_block: a must be scalar");
  const auto& dec = decomposition(f.grid());
  const Field at = truncated(a);
  Spectrum fs = to_spectral(f);
  truncate(fs);
  const Spectrum pf = apply_first_order(op, fs);
  const Spectrum first = dec.block(j, product_spectrum(at, to_physical_unchecked(pf)));
  const Spectrum second = product_spectrum(at, to_physical_unchecked(dec.block(j, pf)));
  Spectrum diff = first;
  diff.add_scaled(second, -1.0);
  return to_physical_unchecked(diff);
}

Field transport_commutator_block(int j, const Field& u, const Field& f) {
  const int d = u.grid().dim();
  if (u.components() != d) {
    throw Error(ErrorCode::Shape, "transport_commutator_block: u must be a vector field");
  }
  Field sum(f.grid(), f.components());
  for (int a = 0; a < d; ++a) {
    sum += commutator_block(j, component_of(u, a), f, FirstOrder::partial(a));
  }
  return sum;
}

double weighted_mean_square(const Spectrum& a, const Spectrum& g) {
  require_same_grid(a.grid(), g.grid(), "weighted_mean_square");
  const Field af = oversample(a, 2);
  const Field gf = oversample(g, 2);
  const std::size_t np = af.grid().points();
  double sum = 0.0;
  for (std::size_t p = 0; p < np; ++p) {
    double g2 = 0.0;
    for (int c = 0; c < gf.components(); ++c) {
      const double v = gf.component(c)[p];
      g2 += v * v;
    }
    const double w = af.component(0)[p];
    sum += w * w * g2;
  }
  return sum / static_cast<double>(np);
}

double s_quantity(const Field& alpha, const Field& f, const FirstOrder& op, double s) {
  require_same_grid(alpha.grid(), f.grid(), "s_quantity");
  if (alpha.components() != 1) throw Error(ErrorCode::Shape, "s_quantity: alpha must be scalar");
  const auto& dec = decomposition(f.grid());
  const Spectrum as = to_spectral(alpha);
  const Spectrum pf = apply_first_order(op, to_spectral(f));
  double sum = 0.0;
  for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
    sum += std::exp2(2.0 * j * s) * weighted_mean_square(as, dec.block(j, pf));
  }
  return sum;
}

}  // namespace kolmo
