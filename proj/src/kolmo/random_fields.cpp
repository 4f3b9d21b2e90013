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

#include "kolmo/random_fields.hpp"

#include <cmath>
#include <random>

#include "kolmo/spectral.hpp"

namespace kolmo {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Spectrum random_band_spectrum(const TorusGrid& grid, int components, std::uint64_t seed,
                              double band, double decay) {
  const auto& t = mode_tables(grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum c(grid, components);
  for (int comp = 0; comp < components; ++comp) {
    auto v = c.component(comp);
    for (std::size_t i = 0; i < v.size(); ++i) {
      // Draw for every mode so the sequence does not depend on the band.
      const double re = normal(rng);
      const double im = normal(rng);
      if (t.k2[i] == 0.0 || t.nyquist[i] || t.k2[i] > band * band) continue;
      v[i] = Complex(re, im) * std::pow(1.0 + t.k2[i], -0.5 * decay);
    }
  }
  // The inverse transform reads only one of each conjugate pair on the
  // self-mirrored plane; going round once makes the stored spectrum agree.
  return to_spectral(to_physical_unchecked(c));
}

Field random_band_field(const TorusGrid& grid, int components, std::uint64_t seed, double band,
                        double decay) {
  Field f = to_physical_unchecked(random_band_spectrum(grid, components, seed, band, decay));
  double m = 0.0;
  for (std::size_t p = 0; p < grid.points(); ++p) {
    double s = 0.0;
    for (int c = 0; c < components; ++c) s += f.component(c)[p] * f.component(c)[p];
    m = std::max(m, s);
  }
  if (m > 0.0) f *= 1.0 / std::sqrt(m);
  return f;
}

}  // namespace kolmo
