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

#ifndef KOLMO_SPECTRAL_HPP
#define KOLMO_SPECTRAL_HPP

#include <array>

#include "kolmo/field.hpp"

namespace kolmo {

// ---------------------------------------------------------------------------
// Transforms

/// Throws Error(InvalidField) on non-finite input.
Spectrum to_spectral(const Field& f);

/// Throws Error(Symmetry) if c_{-k} != conj(c_k) beyond 1e-12 (relative to
/// max(1, max|c|)); the error magnitude is the largest asymmetry found.
Field to_physical(const Spectrum& c);

/// Same as to_physical without the symmetry check. Operators in this
/// library preserve symmetry by construction and use this path.
Field to_physical_unchecked(const Spectrum& c);

/// Largest |c_{-k} - conj(c_k)| over the self-mirrored plane.
double hermitian_defect(const Spectrum& c);

// ---------------------------------------------------------------------------
// Differential operators
//
// Matrix-valued fields are stored with component a*d + b holding entry (a,b).

enum class DerivativeOp { Gradient, Divergence, Laplacian, SymGradient };

/// Gradient of every component: m components in, m*d out, (a*d+b) = d_b f_a.
Spectrum gradient(const Spectrum& f);
/// m*d components in, m out: out_a = sum_b d_b f_(a*d+b).
Spectrum divergence(const Spectrum& f);
Spectrum laplacian(const Spectrum& f);
/// d components in, d*d out: (d_b u_a + d_a u_b) / 2.
Spectrum sym_gradient(const Spectrum& u);
/// d_axis of every component.
Spectrum partial(const Spectrum& f, int axis);

/// Physical-space wrapper. Throws Error(Shape) when the component count does
/// not fit the operator.
Field apply_derivative(const Field& f, DerivativeOp op);

/// P = I - grad Delta^{-1} div; the k = 0 mode passes through unchanged.
Spectrum leray_project(const Spectrum& u);
Field leray_project(const Field& u);

/// Solves Delta g = f with zero-mean g. Throws Error(MeanViolation) when
/// |mean f| > 1e-10 * ||f||_{L2}.
Field invert_laplacian_zero_mean(const Field& f);
/// Spectral version: drops the k = 0 mode without checking it.
Spectrum inverse_laplacian(const Spectrum& f);

// ---------------------------------------------------------------------------
// Dealiasing

/// Zeroes every mode with some 3|k_a| >= n.
void truncate(Spectrum& c);
Field truncated(const Field& f);

/// Truncates both inputs, multiplies pointwise, truncates the result. One
/// operand may be scalar and the other multi-component (broadcast).
Field dealias_product(const Field& f, const Field& g);
/// Product of already truncated physical samples; returns the truncated
/// spectrum of the pointwise product.
Spectrum product_spectrum(const Field& f, const Field& g);

// ---------------------------------------------------------------------------
// Norms and point evaluation

/// Normalised mean of |f|^2 summed over components (Parseval).
double mean_square(const Spectrum& c);
/// Normalised mean of f.g summed over components.
double inner(const Spectrum& a, const Spectrum& b);
/// sqrt(mean_square).
double l2_norm(const Spectrum& c);

/// Samples the trigonometric interpolant on a grid refined by `factor`.
Field oversample(const Spectrum& c, int factor = 2);

/// Max over a 2x oversampled grid of the pointwise Euclidean norm across
/// components.
double linf_norm(const Spectrum& c);
double linf_norm(const Field& f);

struct Extremum {
  double value = 0.0;
  std::array<double, 3> x{0.0, 0.0, 0.0};
};

/// Minimum or maximum of a scalar trigonometric polynomial: best point of a
/// 2x oversampled grid, refined by Newton iteration on the interpolant.
Extremum extremum(const Spectrum& scalar, bool maximum);

/// Evaluates the interpolant of one component at an arbitrary point.
double evaluate(const Spectrum& c, const std::array<double, 3>& x, int component = 0);

}  // namespace kolmo

#endif  // KOLMO_SPECTRAL_HPP
