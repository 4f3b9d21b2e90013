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

#ifndef KOLMO_GRID_HPP
#define KOLMO_GRID_HPP

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

namespace kolmo {

/// Uniform collocation grid on the torus [0, 2pi)^d.
///
/// Physical samples are stored row-major over (i_0, ..., i_{d-1}) with
/// x_a = 2 pi i_a / n. Spectral coefficients use the Hermitian-packed layout
/// of a real-to-complex transform: the first d-1 axes are full (n entries,
/// FFT ordering) and the last axis keeps the n/2 + 1 nonnegative
/// wavenumbers.
class TorusGrid {
 public:
  static constexpr double kLength = 2.0 * std::numbers::pi;

  TorusGrid() = default;
  TorusGrid(int dim, int n);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  bool empty() const noexcept { return dim_ == 0; }

  std::size_t points() const noexcept;
  std::size_t modes() const noexcept;
  int packed_last() const noexcept { return n_ / 2 + 1; }
  double spacing() const noexcept { return kLength / n_; }
  /// |T^d| = (2 pi)^d.
  double measure() const noexcept;

  /// Signed wavenumber of FFT index i along a full axis.
  int wavenumber(int i) const noexcept { return i <= n_ / 2 ? i : i - n_; }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  int dim_ = 0;
  int n_ = 0;
};

/// Per-grid lookup tables for the packed spectral layout. Built once per
/// grid and shared; immutable afterwards.
struct ModeTables {
  TorusGrid grid;
  std::vector<std::array<double, 3>> k;   // wavevector (unused axes are 0)
  std::vector<double> k2;                 // |k|^2
  std::vector<double> weight;             // Hermitian multiplicity, 0 on Nyquist
  std::vector<unsigned char> nyquist;     // some |k_a| == n/2
  std::vector<unsigned char> in_band;     // all |k_a| < n/3
  std::vector<std::size_t> mirror;        // index of -k on the last-axis-0 plane
  static constexpr std::size_t kNoMirror = static_cast<std::size_t>(-1);
};

const ModeTables& mode_tables(const TorusGrid& grid);

/// Packed index of wavevector k (components beyond dim ignored). Returns
/// ModeTables::kNoMirror if k is not representable in the packed layout
/// (negative last component, or |k_a| > n/2).
std::size_t packed_index(const TorusGrid& grid, const std::array<int, 3>& k);

}  // namespace kolmo

#endif  // KOLMO_GRID_HPP
