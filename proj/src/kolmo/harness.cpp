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

#include "kolmo/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "kolmo/error.hpp"
#include "kolmo/random_fields.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo {

namespace {

double hs(const Spectrum& f, double s) { return sobolev_norm(f, s, SobolevVariant::Full); }

std::optional<double> quotient(double lhs, double rhs) {
  if (lhs == 0.0 && rhs == 0.0) return std::nullopt;
  return lhs / rhs;
}

// Shifted so that the polished minimum of the interpolant is exactly 0.
Field nonnegative(Field h) {
  const double lo = extremum(to_spectral(h), false).value;
  for (double& v : h.values()) v -= lo;
  return h;
}

}  // namespace

RatioStats ratio_stats(const std::vector<std::optional<double>>& ratios) {
  RatioStats st;
  st.trials = ratios.size();
  double sum = 0.0, sum2 = 0.0;
  for (const auto& r : ratios) {
    if (!r) {
      ++st.skipped;
      continue;
    }
    if (!std::isfinite(*r)) st.finite = false;
    st.max = st.used == 0 ? *r : std::max(st.max, *r);
    sum += *r;
    sum2 += *r * *r;
    ++st.used;
  }
  if (st.used > 0) {
    st.mean = sum / static_cast<double>(st.used);
    st.std = std::sqrt(std::max(0.0, sum2 / static_cast<double>(st.used) - st.mean * st.mean));
  }
  return st;
}

std::optional<double> bernstein_ratio(const Field& f) {
  const Spectrum c = to_spectral(f);
  const DyadicDecomposition& dec = decomposition(f.grid());
  const double total = mean_square(c);
  std::optional<double> worst;  // stays empty when no block is active
  for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
    const Spectrum b = dec.block(j, c);
    const double e = std::sqrt(mean_square(b));
    if (e == 0.0 || e <= 1e-14 * std::sqrt(total)) continue;
    Spectrum dm = b;
    for (int m = 1; m <= 2; ++m) {
      dm = gradient(dm);
      const double de = std::sqrt(mean_square(dm));
      const double scale = std::ldexp(1.0, j * m);
      const double upper = de / (scale * e);
      const double lower = e / (scale * de);
      const double r = std::max(upper, lower);
      worst = worst ? std::max(*worst, r) : r;
    }
  }
  return worst;
}

std::optional<double> interpolation_ratio(const Field& f) {
  Spectrum c = to_spectral(f);
  c.component(0)[0] = 0.0;
  const int d = f.grid().dim();
  const double lhs = linf_norm(c);
  const double rhs = std::pow(l2_norm(c), 2.0 / (d + 2)) * std::pow(linf_norm(gradient(c)), double(d) / (d + 2));
  return quotient(lhs, rhs);
}

std::optional<double> commutator_ratio(const Field& u, const Field& f, double s) {
  const DyadicDecomposition& dec = decomposition(f.grid());
  double lhs2 = 0.0;
  for (int j = dec.j_min(); j <= dec.j_max(); ++j) {
    const Spectrum cb = to_spectral(transport_commutator_block(j, u, f));
    lhs2 += std::pow(2.0, 2.0 * j * s) * mean_square(cb);
  }
  const Spectrum uc = to_spectral(u), fc = to_spectral(f);
  const Spectrum gu = gradient(uc), gf = gradient(fc);
  const double rhs = linf_norm(gu) * hs(fc, s) + linf_norm(gf) * hs(gu, s - 1.0);
  return quotient(std::sqrt(lhs2), rhs);
}

std::optional<double> product_ratio(const Field& u, const Field& v, double s) {
  const Spectrum uc = to_spectral(u), vc = to_spectral(v);
  const double lhs = hs(to_spectral(dealias_product(u, v)), s);
  const double rhs = linf_norm(uc) * hs(vc, s) + hs(uc, s) * linf_norm(vc);
  return quotient(lhs, rhs);
}

std::optional<double> composition_ratio(const Field& omega, double s) {
  const Spectrum wc = to_spectral(omega);
  const double w = extremum(wc, false).value;
  if (!(w > 0.0)) {
    throw Error(ErrorCode::Validation, "composition_ratio: omega must be positive (inf " +
                                           std::to_string(w) + ")");
  }
  Field g = omega;
  for (double& v : g.values()) v = 1.0 / std::sqrt(v);
  const double lhs = hs(to_spectral(g), s);
  const double is = std::floor(s);
  const double factor = (1.0 + std::pow(w, 1.0 + is)) / std::pow(w, 1.5 + is);
  const double rhs = factor * (1.0 + std::pow(linf_norm(gradient(wc)), is)) * hs(wc, s);
  return quotient(lhs, rhs);
}

std::optional<double> key_ratio(const Field& alpha, const Field& f, double s) {
  const Spectrum ac = to_spectral(alpha), fc = to_spectral(f);
  const Spectrum pf = gradient(fc);
  const Spectrum apf = to_spectral(dealias_product(alpha, to_physical(pf)));
  const double S = s_quantity(alpha, f, FirstOrder::gradient(), s);
  const double low = linf_norm(pf) * hs(ac, s) + linf_norm(gradient(ac)) * hs(fc, s);
  const double full2 = std::pow(hs(apf, s), 2);
  const double hom2 = std::pow(sobolev_norm(apf, s, SobolevVariant::Homogeneous), 2);
  const auto upper = quotient(full2, S + low * low);
  const auto lower = quotient(S, hom2 + low * low);
  if (!upper && !lower) return std::nullopt;
  return std::max(upper.value_or(0.0), lower.value_or(0.0));
}

const std::vector<std::string>& harness_cases() {
  static const std::vector<std::string> cases = {"bernstein", "interp", "comm",
                                                 "product",   "comp",   "key"};
  return cases;
}

int default_threads() {
  if (const char* env = std::getenv("KOLMO_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

HarnessResult run_harness(const std::string& name, std::size_t trials, std::uint64_t seed,
                          const HarnessOptions& options) {
  if (trials < 1) throw Error(ErrorCode::Validation, "harness: trials must be at least 1");
  enum Case { Bernstein, Interp, Comm, Product, Comp, Key } which;
  if (name == "bernstein") {
    which = Bernstein;
  } else if (name == "interp") {
    which = Interp;
  } else if (name == "comm") {
    which = Comm;
  } else if (name == "product") {
    which = Product;
  } else if (name == "comp") {
    which = Comp;
  } else if (name == "key") {
    which = Key;
  } else {
    throw Error(ErrorCode::Validation, "unknown harness case \"" + name +
                                           "\" (expected bernstein, interp, comm, product, comp or key)");
  }
  if (which == Comp && !(options.omega_o > 0.0)) {
    throw Error(ErrorCode::Validation, "harness: omega_o must be positive");
  }
  const TorusGrid grid(options.d, options.n);
  const double s = which == Product ? 2.0 : options.s;

  auto trial = [&](std::size_t i) -> std::optional<double> {
    const std::uint64_t base = mix_seed(seed, i);
    auto scalar = [&](std::uint64_t k) {
      return random_band_field(grid, 1, mix_seed(base, k), options.band, options.decay);
    };
    switch (which) {
      case Bernstein:
        return bernstein_ratio(scalar(0));
      case Interp:
        return interpolation_ratio(scalar(0));
      case Comm:
        return commutator_ratio(
            random_band_field(grid, grid.dim(), mix_seed(base, 0), options.band, options.decay),
            scalar(1), s);
      case Product:
        return product_ratio(scalar(0), scalar(1), s);
      case Comp: {
        Field w = nonnegative(scalar(0));
        for (double& v : w.values()) v += options.omega_o;
        return composition_ratio(w, s);
      }
      case Key:
        return key_ratio(nonnegative(scalar(0)), scalar(1), s);
    }
    return std::nullopt;
  };

  std::vector<std::optional<double>> ratios(trials);
  const int threads = std::max(1, std::min<int>(options.threads > 0 ? options.threads : default_threads(),
                                                static_cast<int>(trials)));
  if (threads == 1) {
    for (std::size_t i = 0; i < trials; ++i) ratios[i] = trial(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < trials && !failed;) {
          try {
            ratios[i] = trial(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  HarnessResult r;
  r.name = name;
  r.options = options;
  r.options.s = s;
  r.seed = seed;
  r.stats = ratio_stats(ratios);
  return r;
}

}  // namespace kolmo
