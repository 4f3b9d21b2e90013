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

#include "kolmo/grid.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "kolmo/error.hpp"

namespace kolmo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidField: return "invalid-field";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::Symmetry: return "symmetry";
    case ErrorCode::MeanViolation: return "mean-violation";
    case ErrorCode::FloorViolation: return "floor-violation";
    case ErrorCode::BlowUp: return "blow-up";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Io: return "io";
    case ErrorCode::Checksum: return "checksum";
    case ErrorCode::Misaligned: return "misaligned";
    case ErrorCode::InsufficientData: return "insufficient-data";
  }
  return "unknown";
}

TorusGrid::TorusGrid(int dim, int n) : dim_(dim), n_(n) {
  if (dim < 1 || dim > 3) {
    throw Error(ErrorCode::Validation,
                "grid dimension must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  }
  if (n < 8 || (n & (n - 1)) != 0) {
    throw Error(ErrorCode::Validation,
                "points per axis must be a power of two >= 8 (got " + std::to_string(n) + ")");
  }
}

std::size_t TorusGrid::points() const noexcept {
  std::size_t p = 1;
  for (int a = 0; a < dim_; ++a) p *= static_cast<std::size_t>(n_);
  return dim_ == 0 ? 0 : p;
}

std::size_t TorusGrid::modes() const noexcept {
  if (dim_ == 0) return 0;
  std::size_t m = static_cast<std::size_t>(packed_last());
  for (int a = 0; a + 1 < dim_; ++a) m *= static_cast<std::size_t>(n_);
  return m;
}

double TorusGrid::measure() const noexcept { return std::pow(kLength, dim_); }

std::size_t packed_index(const TorusGrid& grid, const std::array<int, 3>& k) {
  const int n = grid.n();
  const int d = grid.dim();
  const int last = k[d - 1];
  if (last < 0 || last > n / 2) return ModeTables::kNoMirror;
  std::size_t idx = 0;
  for (int a = 0; a + 1 < d; ++a) {
    if (k[a] > n / 2 || k[a] < -n / 2) return ModeTables::kNoMirror;
    const int i = k[a] >= 0 ? k[a] : k[a] + n;
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
  }
  return idx * static_cast<std::size_t>(grid.packed_last()) + static_cast<std::size_t>(last);
}

namespace {

std::unique_ptr<ModeTables> build_tables(const TorusGrid& grid) {
  auto t = std::make_unique<ModeTables>();
  t->grid = grid;
  const int n = grid.n();
  const int d = grid.dim();
  const int half = grid.packed_last();
  const std::size_t m = grid.modes();
  t->k.resize(m);
  t->k2.resize(m);
  t->weight.resize(m);
  t->nyquist.resize(m);
  t->in_band.resize(m);
  t->mirror.assign(m, ModeTables::kNoMirror);

  for (std::size_t idx = 0; idx < m; ++idx) {
    std::array<int, 3> ki{0, 0, 0};
    std::size_t rest = idx;
    ki[d - 1] = static_cast<int>(rest % static_cast<std::size_t>(half));
    rest /= static_cast<std::size_t>(half);
    for (int a = d - 2; a >= 0; --a) {
      ki[a] = grid.wavenumber(static_cast<int>(rest % static_cast<std::size_t>(n)));
      rest /= static_cast<std::size_t>(n);
    }
    bool nyq = false;
    bool band = true;
    double k2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const int ka = ki[a];
      if (std::abs(ka) == n / 2) nyq = true;
      if (3 * std::abs(ka) >= n) band = false;
      t->k[idx][a] = static_cast<double>(ka);
      k2 += static_cast<double>(ka) * ka;
    }
    t->k2[idx] = k2;
    t->nyquist[idx] = nyq ? 1 : 0;
    t->in_band[idx] = band ? 1 : 0;
    const int last = ki[d - 1];
    t->weight[idx] = nyq ? 0.0 : (last == 0 ? 1.0 : 2.0);
    if (last == 0 && !nyq) {
      std::array<int, 3> neg{-ki[0], -ki[1], -ki[2]};
      neg[d - 1] = 0;
      t->mirror[idx] = packed_index(grid, neg);
    }
  }
  return t;
}

}  // namespace

const ModeTables& mode_tables(const TorusGrid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<ModeTables>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{grid.dim(), grid.n()}];
  if (!slot) slot = build_tables(grid);
  return *slot;
}

}  // namespace kolmo
