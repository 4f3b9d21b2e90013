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

#include "kolmo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kolmo/error.hpp"
#include "kolmo/fft.hpp"

namespace kolmo {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_components(const Spectrum& c, int expected, const char* what) {
  if (c.components() != expected) {
    throw Error(ErrorCode::Shape, std::string(what) + ": expected " + std::to_string(expected) +
                                      " components, got " + std::to_string(c.components()));
  }
}

}  // namespace

Spectrum to_spectral(const Field& f) {
  if (!all_finite(f)) throw Error(ErrorCode::InvalidField, "to_spectral: non-finite field values");
  Spectrum out(f.grid(), f.components());
  const auto& fft = FftEngine::get(f.grid());
  for (int c = 0; c < f.components(); ++c) fft.forward(f.component(c), out.component(c));
  return out;
}

double hermitian_defect(const Spectrum& c) {
  const auto& t = mode_tables(c.grid());
  double defect = 0.0;
  for (int comp = 0; comp < c.components(); ++comp) {
    const auto v = c.component(comp);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
        return std::numeric_limits<double>::infinity();
      }
      if (t.mirror[i] == ModeTables::kNoMirror) continue;
      defect = std::max(defect, std::abs(v[i] - std::conj(v[t.mirror[i]])));
    }
  }
  return defect;
}

Field to_physical(const Spectrum& c) {
  double scale = 1.0;
  for (const Complex& v : c.values()) scale = std::max(scale, std::abs(v));
  const double defect = hermitian_defect(c);
  if (!(defect <= 1e-12 * scale)) {
    throw Error(ErrorCode::Symmetry,
                "to_physical: coefficients are not Hermitian-symmetric (max asymmetry " +
                    std::to_string(defect) + ")",
                defect);
  }
  return to_physical_unchecked(c);
}

Field to_physical_unchecked(const Spectrum& c) {
  Field out(c.grid(), c.components());
  const auto& fft = FftEngine::get(c.grid());
  for (int comp = 0; comp < c.components(); ++comp) fft.backward(c.component(comp), out.component(comp));
  return out;
}

Spectrum partial(const Spectrum& f, int axis) {
  const auto& t = mode_tables(f.grid());
  Spectrum out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = kI * t.k[i][axis] * src[i];
  }
  return out;
}

Spectrum gradient(const Spectrum& f) {
  const int d = f.grid().dim();
  const auto& t = mode_tables(f.grid());
  Spectrum out(f.grid(), f.components() * d);
  for (int a = 0; a < f.components(); ++a) {
    const auto src = f.component(a);
    for (int b = 0; b < d; ++b) {
      auto dst = out.component(a * d + b);
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] = kI * t.k[i][b] * src[i];
    }
  }
  return out;
}

Spectrum divergence(const Spectrum& f) {
  const int d = f.grid().dim();
  if (f.components() % d != 0) {
    throw Error(ErrorCode::Shape, "divergence: component count " + std::to_string(f.components()) +
                                      " is not a multiple of d = " + std::to_string(d));
  }
  const auto& t = mode_tables(f.grid());
  const int m = f.components() / d;
  Spectrum out(f.grid(), m);
  for (int a = 0; a < m; ++a) {
    auto dst = out.component(a);
    for (int b = 0; b < d; ++b) {
      const auto src = f.component(a * d + b);
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] += kI * t.k[i][b] * src[i];
    }
  }
  return out;
}

Spectrum laplacian(const Spectrum& f) {
  const auto& t = mode_tables(f.grid());
  Spectrum out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = -t.k2[i] * src[i];
  }
  return out;
}

Spectrum sym_gradient(const Spectrum& u) {
  const int d = u.grid().dim();
  require_components(u, d, "sym_gradient");
  const auto& t = mode_tables(u.grid());
  Spectrum out(u.grid(), d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const auto ua = u.component(a);
      const auto ub = u.component(b);
      auto dst = out.component(a * d + b);
      for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = 0.5 * kI * (t.k[i][b] * ua[i] + t.k[i][a] * ub[i]);
      }
    }
  }
  return out;
}

Field apply_derivative(const Field& f, DerivativeOp op) {
  const int d = f.grid().dim();
  switch (op) {
    case DerivativeOp::Gradient:
      return to_physical_unchecked(gradient(to_spectral(f)));
    case DerivativeOp::Divergence:
      if (f.components() != d) {
        throw Error(ErrorCode::Shape, "divergence requires a vector field with d components");
      }
      return to_physical_unchecked(divergence(to_spectral(f)));
    case DerivativeOp::Laplacian:
      return to_physical_unchecked(laplacian(to_spectral(f)));
    case DerivativeOp::SymGradient:
      if (f.components() != d) {
        throw Error(ErrorCode::Shape, "sym_gradient requires a vector field with d components");
      }
      return to_physical_unchecked(sym_gradient(to_spectral(f)));
  }
  throw Error(ErrorCode::Shape, "unknown derivative operator");
}

Spectrum leray_project(const Spectrum& u) {
  const int d = u.grid().dim();
  require_components(u, d, "leray_project");
  const auto& t = mode_tables(u.grid());
  Spectrum out = u;
  for (std::size_t i = 0; i < t.k2.size(); ++i) {
    if (t.k2[i] == 0.0) continue;
    Complex kdotu{};
    for (int a = 0; a < d; ++a) kdotu += t.k[i][a] * u.component(a)[i];
    const Complex s = kdotu / t.k2[i];
    for (int a = 0; a < d; ++a) out.component(a)[i] -= t.k[i][a] * s;
  }
  return out;
}

Field leray_project(const Field& u) {
  if (u.components() != u.grid().dim()) {
    throw Error(ErrorCode::Shape, "leray_project requires a vector field with d components");
  }
  return to_physical_unchecked(leray_project(to_spectral(u)));
}

Spectrum inverse_laplacian(const Spectrum& f) {
  const auto& t = mode_tables(f.grid());
  Spectrum out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i] = t.k2[i] == 0.0 ? Complex{} : -src[i] / t.k2[i];
    }
  }
  return out;
}

Field invert_laplacian_zero_mean(const Field& f) {
  const Spectrum c = to_spectral(f);
  const double norm = l2_norm(c);
  for (int comp = 0; comp < c.components(); ++comp) {
    const double mean = std::abs(c.component(comp)[0]);
    if (mean > 1e-10 * norm) {
      throw Error(ErrorCode::MeanViolation,
                  "invert_laplacian_zero_mean: field mean " + std::to_string(mean) +
                      " is not zero",
                  mean);
    }
  }
  return to_physical_unchecked(inverse_laplacian(c));
}

void truncate(Spectrum& c) {
  const auto& t = mode_tables(c.grid());
  for (int comp = 0; comp < c.components(); ++comp) {
    auto v = c.component(comp);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!t.in_band[i]) v[i] = Complex{};
    }
  }
}

Field truncated(const Field& f) {
  Spectrum c = to_spectral(f);
  truncate(c);
  return to_physical_unchecked(c);
}

Spectrum product_spectrum(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "dealias_product");
  const int cf = f.components();
  const int cg = g.components();
  if (cf != cg && cf != 1 && cg != 1) {
    throw Error(ErrorCode::Shape, "dealias_product: incompatible component counts " +
                                      std::to_string(cf) + " and " + std::to_string(cg));
  }
  const int m = std::max(cf, cg);
  Field prod(f.grid(), m);
  for (int c = 0; c < m; ++c) {
    const auto a = f.component(cf == 1 ? 0 : c);
    const auto b = g.component(cg == 1 ? 0 : c);
    auto dst = prod.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] * b[i];
  }
  Spectrum out = to_spectral(prod);
  truncate(out);
  return out;
}

Field dealias_product(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "dealias_product");
  return to_physical_unchecked(product_spectrum(truncated(f), truncated(g)));
}

double mean_square(const Spectrum& c) {
  const auto& t = mode_tables(c.grid());
  double s = 0.0;
  for (int comp = 0; comp < c.components(); ++comp) {
    const auto v = c.component(comp);
    for (std::size_t i = 0; i < v.size(); ++i) s += t.weight[i] * std::norm(v[i]);
  }
  return s;
}

double inner(const Spectrum& a, const Spectrum& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  if (a.components() != b.components()) throw Error(ErrorCode::Shape, "inner: component mismatch");
  const auto& t = mode_tables(a.grid());
  double s = 0.0;
  for (int comp = 0; comp < a.components(); ++comp) {
    const auto va = a.component(comp);
    const auto vb = b.component(comp);
    for (std::size_t i = 0; i < va.size(); ++i) {
      s += t.weight[i] * (va[i].real() * vb[i].real() + va[i].imag() * vb[i].imag());
    }
  }
  return s;
}

double l2_norm(const Spectrum& c) { return std::sqrt(mean_square(c)); }

Field oversample(const Spectrum& c, int factor) {
  const TorusGrid& g = c.grid();
  const TorusGrid fine(g.dim(), g.n() * factor);
  const auto& t = mode_tables(g);
  Spectrum big(fine, c.components());
  for (std::size_t i = 0; i < t.k.size(); ++i) {
    if (t.nyquist[i]) continue;
    const std::array<int, 3> k{static_cast<int>(t.k[i][0]), static_cast<int>(t.k[i][1]),
                               static_cast<int>(t.k[i][2])};
    const std::size_t j = packed_index(fine, k);
    for (int comp = 0; comp < c.components(); ++comp) big.component(comp)[j] = c.component(comp)[i];
  }
  return to_physical_unchecked(big);
}

double linf_norm(const Spectrum& c) {
  const Field f = oversample(c, 2);
  double m = 0.0;
  const std::size_t np = f.grid().points();
  for (std::size_t p = 0; p < np; ++p) {
    double s = 0.0;
    for (int comp = 0; comp < f.components(); ++comp) {
      const double v = f.component(comp)[p];
      s += v * v;
    }
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

double linf_norm(const Field& f) { return linf_norm(to_spectral(f)); }

namespace {

// Interpolant of one component with value, gradient and Hessian at a point.
class PointEvaluator {
 public:
  PointEvaluator(const Spectrum& c, int component)
      : t_(mode_tables(c.grid())), v_(c.component(component)), d_(c.grid().dim()),
        half_(c.grid().n() / 2) {}

  struct Result {
    double f = 0.0;
    std::array<double, 3> g{};
    std::array<std::array<double, 3>, 3> h{};
  };

  Result operator()(const std::array<double, 3>& x, bool derivatives) const {
    std::array<std::vector<Complex>, 3> e;
    for (int a = 0; a < d_; ++a) {
      e[a].resize(2 * half_ + 1);
      for (int k = -half_; k <= half_; ++k) e[a][k + half_] = std::polar(1.0, k * x[a]);
    }
    Result r;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      const double w = t_.weight[i];
      if (w == 0.0 || v_[i] == Complex{}) continue;
      Complex phase = v_[i] * w;
      for (int a = 0; a < d_; ++a) phase *= e[a][static_cast<int>(t_.k[i][a]) + half_];
      r.f += phase.real();
      if (!derivatives) continue;
      for (int a = 0; a < d_; ++a) {
        r.g[a] -= t_.k[i][a] * phase.imag();
        for (int b = 0; b < d_; ++b) r.h[a][b] -= t_.k[i][a] * t_.k[i][b] * phase.real();
      }
    }
    return r;
  }

 private:
  const ModeTables& t_;
  std::span<const Complex> v_;
  int d_;
  int half_;
};

// Solves h s = g for d <= 3 by Gaussian elimination; false if singular.
// Flat directions (pivot below 1e-10 of the largest entry) get a zero step,
// so fields that do not depend on some axis still polish.
bool solve_small(int d, std::array<std::array<double, 3>, 3> h, std::array<double, 3> g,
                 std::array<double, 3>& s) {
  double scale = 0.0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) scale = std::max(scale, std::abs(h[r][c]));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) return false;
  for (int col = 0; col < d; ++col) {
    int piv = col;
    for (int r = col + 1; r < d; ++r) {
      if (std::abs(h[r][col]) > std::abs(h[piv][col])) piv = r;
    }
    if (std::abs(h[piv][col]) < 1e-10 * scale) {
      h[col] = {0.0, 0.0, 0.0};
      h[col][col] = 1.0;
      g[col] = 0.0;
      continue;
    }
    std::swap(h[piv], h[col]);
    std::swap(g[piv], g[col]);
    for (int r = col + 1; r < d; ++r) {
      const double f = h[r][col] / h[col][col];
      for (int k = col; k < d; ++k) h[r][k] -= f * h[col][k];
      g[r] -= f * g[col];
    }
  }
  for (int r = d - 1; r >= 0; --r) {
    double acc = g[r];
    for (int k = r + 1; k < d; ++k) acc -= h[r][k] * s[k];
    s[r] = acc / h[r][r];
  }
  return true;
}

}  // namespace

double evaluate(const Spectrum& c, const std::array<double, 3>& x, int component) {
  return PointEvaluator(c, component)(x, false).f;
}

Extremum extremum(const Spectrum& scalar, bool maximum) {
  require_components(scalar, 1, "extremum");
  const Field fine = oversample(scalar, 2);
  const TorusGrid& fg = fine.grid();
  const int d = fg.dim();
  const int n = fg.n();
  const auto v = fine.component(0);
  const double sign = maximum ? -1.0 : 1.0;  // minimise sign * f

  // Local minima of sign*f on the fine grid.
  std::vector<std::size_t> candidates;
  std::array<std::size_t, 3> stride{};
  stride[d - 1] = 1;
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<std::size_t>(n);
  for (std::size_t p = 0; p < v.size(); ++p) {
    bool local = true;
    for (int a = 0; a < d && local; ++a) {
      const std::size_t ia = (p / stride[a]) % static_cast<std::size_t>(n);
      const std::size_t base = p - ia * stride[a];
      const std::size_t up = base + ((ia + 1) % n) * stride[a];
      const std::size_t dn = base + ((ia + n - 1) % n) * stride[a];
      if (sign * v[up] < sign * v[p] || sign * v[dn] < sign * v[p]) local = false;
    }
    if (local) candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return sign * v[a] < sign * v[b] || (sign * v[a] == sign * v[b] && a < b);
  });
  if (candidates.size() > 4) candidates.resize(4);

  auto point_of = [&](std::size_t p) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) {
      x[a] = fg.spacing() * static_cast<double>((p / stride[a]) % static_cast<std::size_t>(n));
    }
    return x;
  };

  Extremum best;
  std::size_t best_p = 0;
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (sign * v[p] < sign * v[best_p]) best_p = p;
  }
  best.value = v[best_p];
  best.x = point_of(best_p);

  const PointEvaluator eval(scalar, 0);
  const double h = fg.spacing();
  for (std::size_t p : candidates) {
    const std::array<double, 3> x0 = point_of(p);
    std::array<double, 3> x = x0;
    bool ok = true;
    for (int it = 0; it < 30; ++it) {
      const auto r = eval(x, true);
      std::array<double, 3> step{0.0, 0.0, 0.0};
      if (!solve_small(d, r.h, r.g, step)) {
        ok = false;
        break;
      }
      double len = 0.0;
      for (int a = 0; a < d; ++a) {
        x[a] -= step[a];
        len = std::max(len, std::abs(step[a]));
      }
      double drift = 0.0;
      for (int a = 0; a < d; ++a) drift = std::max(drift, std::abs(x[a] - x0[a]));
      if (drift > 2.0 * h) {
        ok = false;
        break;
      }
      if (len < 1e-14) break;
    }
    if (!ok) continue;
    const double fx = eval(x, false).f;
    if (sign * fx < sign * best.value) {
      best.value = fx;
      best.x = x;
    }
  }
  return best;
}

}  // namespace kolmo
