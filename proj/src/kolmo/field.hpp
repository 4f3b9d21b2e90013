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

#ifndef KOLMO_FIELD_HPP
#define KOLMO_FIELD_HPP

#include <complex>
#include <span>
#include <vector>

#include "kolmo/grid.hpp"

namespace kolmo {

using Complex = std::complex<double>;

namespace detail {

// Component-major storage shared by physical and spectral fields.
template <typename T>
class ComponentArray {
 public:
  ComponentArray() = default;
  ComponentArray(const TorusGrid& grid, int components, std::size_t per_component, T value)
      : grid_(grid), components_(components), per_(per_component),
        data_(per_component * static_cast<std::size_t>(components), value) {}

  const TorusGrid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  std::size_t per_component() const noexcept { return per_; }

  std::span<T> component(int c) noexcept {
    return {data_.data() + per_ * static_cast<std::size_t>(c), per_};
  }
  std::span<const T> component(int c) const noexcept {
    return {data_.data() + per_ * static_cast<std::size_t>(c), per_};
  }
  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

 protected:
  TorusGrid grid_;
  int components_ = 0;
  std::size_t per_ = 0;
  std::vector<T> data_;
};

}  // namespace detail

/// Real samples of a scalar (1 component) or vector/matrix field on the grid.
class Field : public detail::ComponentArray<double> {
 public:
  Field() = default;
  Field(const TorusGrid& grid, int components, double value = 0.0)
      : ComponentArray(grid, components, grid.points(), value) {}

  static Field scalar(const TorusGrid& grid, double value = 0.0) { return Field(grid, 1, value); }
  static Field vector(const TorusGrid& grid, double value = 0.0) {
    return Field(grid, grid.dim(), value);
  }

  Field& operator+=(const Field& other);
  Field& operator*=(double factor);
  /// this += factor * other
  Field& add_scaled(const Field& other, double factor);
};

/// Hermitian-packed Fourier coefficients, one block per component.
///
/// Normalisation: c_k = |T^d|^{-1} int f e^{-ik.x} dx, so c_0 is the mean.
class Spectrum : public detail::ComponentArray<Complex> {
 public:
  Spectrum() = default;
  Spectrum(const TorusGrid& grid, int components)
      : ComponentArray(grid, components, grid.modes(), Complex{}) {}

  Spectrum& operator+=(const Spectrum& other);
  Spectrum& operator*=(double factor);
  Spectrum& add_scaled(const Spectrum& other, double factor);
};

/// Throws Error(Shape) unless both fields live on the same grid.
void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* what);

double max_abs(const Field& f);
double min_value(const Field& f, int component = 0);
double max_value(const Field& f, int component = 0);
double grid_mean(std::span<const double> values);
bool all_finite(const Field& f);

}  // namespace kolmo

#endif  // KOLMO_FIELD_HPP
