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

#ifndef KOLMO_FFT_HPP
#define KOLMO_FFT_HPP

#include <span>

#include "kolmo/field.hpp"

namespace kolmo {

/// Real <-> Hermitian-packed transforms for one grid, backed by FFTW.
///
/// forward() divides by n^d (coefficients of the normalised series) and
/// zeroes Nyquist modes; backward() is the plain series sum and ignores any
/// Nyquist content of its input. Plans are created once per grid; execution
/// is thread-safe.
class FftEngine {
 public:
  static const FftEngine& get(const TorusGrid& grid);

  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;
  ~FftEngine();

  void forward(std::span<const double> in, std::span<Complex> out) const;
  void backward(std::span<const Complex> in, std::span<double> out) const;

  const TorusGrid& grid() const noexcept { return grid_; }

 private:
  explicit FftEngine(const TorusGrid& grid);

  TorusGrid grid_;
  void* r2c_ = nullptr;
  void* c2r_ = nullptr;
};

}  // namespace kolmo

#endif  // KOLMO_FFT_HPP
