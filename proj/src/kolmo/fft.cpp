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

#include "kolmo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "kolmo/error.hpp"

namespace kolmo {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftEngine::FftEngine(const TorusGrid& grid) : grid_(grid) {
  int dims[3] = {grid.n(), grid.n(), grid.n()};
  std::vector<double> real(grid.points());
  std::vector<Complex> spec(grid.modes());
  auto* r = real.data();
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  r2c_ = fftw_plan_dft_r2c(grid.dim(), dims, r, c, flags);
  c2r_ = fftw_plan_dft_c2r(grid.dim(), dims, c, r, flags);
  if (r2c_ == nullptr || c2r_ == nullptr) {
    throw Error(ErrorCode::Validation, "FFTW failed to create a plan");
  }
}

FftEngine::~FftEngine() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(r2c_));
  fftw_destroy_plan(static_cast<fftw_plan>(c2r_));
}

const FftEngine& FftEngine::get(const TorusGrid& grid) {
  static std::map<std::pair<int, int>, std::unique_ptr<FftEngine>> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto& slot = cache[{grid.dim(), grid.n()}];
  if (!slot) slot.reset(new FftEngine(grid));
  return *slot;
}

void FftEngine::forward(std::span<const double> in, std::span<Complex> out) const {
  // r2c plans leave the input intact, but FFTW's signature is non-const.
  auto* src = const_cast<double*>(in.data());
  fftw_execute_dft_r2c(static_cast<fftw_plan>(r2c_), src,
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(grid_.points());
  const auto& tables = mode_tables(grid_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = tables.nyquist[i] ? Complex{} : out[i] * scale;
  }
}

void FftEngine::backward(std::span<const Complex> in, std::span<double> out) const {
  // c2r destroys its input.
  std::vector<Complex> scratch(in.begin(), in.end());
  const auto& tables = mode_tables(grid_);
  for (std::size_t i = 0; i < scratch.size(); ++i) {
    if (tables.nyquist[i]) scratch[i] = Complex{};
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(c2r_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace kolmo
