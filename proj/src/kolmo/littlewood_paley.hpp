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

#ifndef KOLMO_LITTLEWOOD_PALEY_HPP
#define KOLMO_LITTLEWOOD_PALEY_HPP

#include <array>
#include <vector>

#include "kolmo/field.hpp"

namespace kolmo {

/// phi(r) = chi(r) - chi(2r), where chi is a C-infinity cutoff equal to 1 on
/// [0, 5/3] and 0 on [12/5, inf), so phi lives in the ring [5/6, 12/5] and
/// sum_j phi(2^-j r) telescopes to 1 for r > 0.
class DyadicBump {
 public:
  static constexpr double kInner = 5.0 / 6.0;
  static constexpr double kOuter = 12.0 / 5.0;
  static constexpr double kChiFlat = 5.0 / 3.0;

  /// Even in r.
  double operator()(double r) const noexcept;
  static double chi(double r) noexcept;
  /// Partition sum over all j with phi(2^-j r) != 0.
  double partition_sum(double r) const noexcept;
};

DyadicBump build_bump();

/// First-order operators used by the commutator and S_s machinery.
struct FirstOrder {
  enum class Kind { Identity, Partial, Gradient, SymGradient };
  Kind kind = Kind::Gradient;
  int axis = 0;

  static FirstOrder identity() { return {Kind::Identity, 0}; }
  static FirstOrder partial(int axis) { return {Kind::Partial, axis}; }
  static FirstOrder gradient() { return {Kind::Gradient, 0}; }
  static FirstOrder sym_gradient() { return {Kind::SymGradient, 0}; }
};

Spectrum apply_first_order(const FirstOrder& op, const Spectrum& f);

/// Dyadic blocks Delta_j = phi(2^-j |D|) on one grid. Each nonzero
/// wavevector meets at most two consecutive blocks; weights are tabulated
/// once per mode.
class DyadicDecomposition {
 public:
  explicit DyadicDecomposition(const TorusGrid& grid);

  const TorusGrid& grid() const noexcept { return grid_; }
  int j_min() const noexcept { return j_min_; }
  int j_max() const noexcept { return j_max_; }
  const DyadicBump& bump() const noexcept { return bump_; }

  /// phi(2^-j |k|) for packed mode i (0 for k = 0).
  double weight(int j, std::size_t mode) const noexcept;

  Spectrum block(int j, const Spectrum& f) const;
  Field block(int j, const Field& f) const;
  /// S_N f = mean + sum_{j <= N-1} Delta_j f.
  Spectrum low_cut(int N, const Spectrum& f) const;
  Field low_cut(int N, const Field& f) const;

  /// ||Delta_j f||^2 (normalised mean, summed over components) for
  /// j = j_min..j_max, indexed by j - j_min.
  std::vector<double> block_energies(const Spectrum& f) const;

 private:
  TorusGrid grid_;
  DyadicBump bump_;
  int j_min_ = 0;
  int j_max_ = 0;
  std::vector<int> jlo_;                   // lowest block touching mode i
  std::vector<std::array<double, 2>> w_;   // weights for jlo, jlo + 1
};

/// Shared per-grid decomposition.
const DyadicDecomposition& decomposition(const TorusGrid& grid);

enum class SobolevVariant { Full, Homogeneous, Classical };

/// full: (||f||^2 + sum_j 2^{2js} ||Delta_j f||^2)^{1/2}; homogeneous drops
/// the L2 part; classical: (sum_k (1+|k|^2)^s |c_k|^2)^{1/2}. Norms are
/// taken with respect to the normalised measure.
double sobolev_norm(const Spectrum& f, double s, SobolevVariant variant);
double sobolev_norm(const Field& f, double s, SobolevVariant variant);

/// [Delta_j, a] P f = Delta_j(a P f) - a Delta_j P f with dealiased products.
Field commutator_block(int j, const Field& a, const Field& f, const FirstOrder& op);

/// sum_a [Delta_j, u_a] d_a f for a vector field u and scalar or vector f.
Field transport_commutator_block(int j, const Field& u, const Field& f);

/// S_s[alpha, P f] = sum_j 2^{2js} mean(alpha^2 |Delta_j P f|^2). Products
/// are evaluated on a 2x refined grid, exact for band-limited inputs.
double s_quantity(const Field& alpha, const Field& f, const FirstOrder& op, double s);

/// Exact normalised mean of a^2 |g|^2 for band-limited a (scalar) and g.
double weighted_mean_square(const Spectrum& a, const Spectrum& g);

}  // namespace kolmo

#endif  // KOLMO_LITTLEWOOD_PALEY_HPP
