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

#ifndef KOLMO_RANDOM_FIELDS_HPP
#define KOLMO_RANDOM_FIELDS_HPP

#include <cstdint>

#include "kolmo/field.hpp"

namespace kolmo {

/// splitmix64 finaliser; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

/// Gaussian coefficients on 0 < |k| <= band with amplitude (1+|k|^2)^{-decay/2},
/// zero mean, Hermitian-symmetric.
Spectrum random_band_spectrum(const TorusGrid& grid, int components, std::uint64_t seed,
                              double band, double decay);

/// random_band_spectrum sampled on the grid and scaled so that the largest
/// grid value of |f| (Euclidean over components) is 1.
Field random_band_field(const TorusGrid& grid, int components, std::uint64_t seed, double band,
                        double decay);

}  // namespace kolmo

#endif  // KOLMO_RANDOM_FIELDS_HPP
