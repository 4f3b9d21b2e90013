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

#include "kolmo/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kolmo/error.hpp"

namespace kolmo {

namespace {

template <typename A>
void require_compatible(const A& a, const A& b) {
  require_same_grid(a.grid(), b.grid(), "field arithmetic");
  if (a.components() != b.components()) {
    throw Error(ErrorCode::Shape, "field arithmetic: component count mismatch");
  }
}

}  // namespace

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* what) {
  if (!(a == b)) {
    throw Error(ErrorCode::Shape, std::string(what) + ": grid mismatch (d=" +
                                      std::to_string(a.dim()) + ", n=" + std::to_string(a.n()) +
                                      " vs d=" + std::to_string(b.dim()) +
                                      ", n=" + std::to_string(b.n()) + ")");
  }
}

Field& Field::operator+=(const Field& other) { return add_scaled(other, 1.0); }

Field& Field::operator*=(double factor) {
  for (double& v : data_) v *= factor;
  return *this;
}

Field& Field::add_scaled(const Field& other, double factor) {
  require_compatible(*this, other);
  const auto src = other.values();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += factor * src[i];
  return *this;
}

Spectrum& Spectrum::operator+=(const Spectrum& other) { return add_scaled(other, 1.0); }

Spectrum& Spectrum::operator*=(double factor) {
  for (Complex& v : data_) v *= factor;
  return *this;
}

Spectrum& Spectrum::add_scaled(const Spectrum& other, double factor) {
  require_compatible(*this, other);
  const auto src = other.values();
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += factor * src[i];
  return *this;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double min_value(const Field& f, int component) {
  const auto c = f.component(component);
  return c.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::min_element(c.begin(), c.end());
}

double max_value(const Field& f, int component) {
  const auto c = f.component(component);
  return c.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::max_element(c.begin(), c.end());
}

double grid_mean(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

bool all_finite(const Field& f) {
  return std::all_of(f.values().begin(), f.values().end(), [](double v) { return std::isfinite(v); });
}

}  // namespace kolmo
