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

#ifndef KOLMO_HARNESS_HPP
#define KOLMO_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kolmo/field.hpp"
#include "kolmo/littlewood_paley.hpp"

namespace kolmo {

/// Ensemble statistics of LHS/RHS ratios (constants set to 1).
struct RatioStats {
  std::size_t trials = 0;
  std::size_t used = 0;
  std::size_t skipped = 0;  // LHS = RHS = 0
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;
  bool finite = true;
};

RatioStats ratio_stats(const std::vector<std::optional<double>>& ratios);

struct HarnessOptions {
  int d = 2;
  int n = 64;
  double s = 2.5;          // product ignores this and uses s = 2
  double band = 8.0;       // keeps every pairwise product inside the 2/3 band at n = 64
  double decay = 2.0;
  double omega_o = 1.0;    // comp only: infimum of the random omega
  int threads = 0;         // 0: KOLMO_THREADS or 1
};

// Per-trial ratios. std::nullopt marks a degenerate trial (both sides 0).

/// max over active j and m in {1, 2} of the two Bernstein ratios
/// ||D^m Delta_j f|| / (2^{jm} ||Delta_j f||) and 2^{-jm} ||Delta_j f|| / ||D^m Delta_j f||.
std::optional<double> bernstein_ratio(const Field& f);
/// ||f||_inf / (||f||_2^{2/(d+2)} ||grad f||_inf^{d/(d+2)}) on the zero-mean part of f.
std::optional<double> interpolation_ratio(const Field& f);
/// (sum_j 2^{2js} ||[Delta_j, u].grad f||^2)^{1/2}
///   / (||grad u||_inf ||f||_{H^s} + ||grad f||_inf ||grad u||_{H^{s-1}}).
std::optional<double> commutator_ratio(const Field& u, const Field& f, double s);
/// ||uv||_{H^s} / (||u||_inf ||v||_{H^s} + ||u||_{H^s} ||v||_inf).
std::optional<double> product_ratio(const Field& u, const Field& v, double s);
/// ||omega^{-1/2}||_{H^s} / ((1 + w^{1+[s]}) w^{-3/2-[s]} (1 + ||grad omega||_inf^{[s]}) ||omega||_{H^s})
/// with w = inf omega (polished minimum of the interpolant).
std::optional<double> composition_ratio(const Field& omega, double s);
/// Larger of the two one-sided ratios of the S_s norm equivalence for
/// alpha P f with P = grad.
std::optional<double> key_ratio(const Field& alpha, const Field& f, double s);

const std::vector<std::string>& harness_cases();

struct HarnessResult {
  std::string name;
  HarnessOptions options;
  std::uint64_t seed = 0;
  RatioStats stats;
};

/// Runs `trials` independent trials with seeds mix_seed(seed, i), in
/// parallel; results do not depend on the thread count. Throws
/// Error(Validation) for an unknown case or trials < 1.
HarnessResult run_harness(const std::string& name, std::size_t trials, std::uint64_t seed,
                          const HarnessOptions& options = {});

/// Thread count from KOLMO_THREADS (>= 1), default 1.
int default_threads();

}  // namespace kolmo

#endif  // KOLMO_HARNESS_HPP
