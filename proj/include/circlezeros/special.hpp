/* Copyright (C) 2026 The circlezeros authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <complex>

namespace circlezeros {

using cdouble = std::complex<double>;

// log Gamma(z) for complex z, Lanczos approximation with reflection for
// Re z < 0.5. The imaginary part is not reduced mod 2pi; exponentiate rather
// than compare branches.
cdouble log_gamma(cdouble z);

// Riemann zeta by Euler-Maclaurin summation. Intended domain: any Re u with
// the pole u = 1 excluded, |Im u| <= 250; accuracy near 1e-14 relative on
// that strip.
cdouble riemann_zeta(cdouble u);

// Hurwitz zeta(u, a) for 0 < a <= 1, same method and domain as above.
cdouble hurwitz_zeta(cdouble u, double a);

// Dirichlet L for the nontrivial character mod 4, via
// 4^{-u} (zeta(u, 1/4) - zeta(u, 3/4)).
cdouble dirichlet_l_chi4(cdouble u);

// Upper incomplete gamma Gamma(s, x) for complex s and real x > 0.
// Continued fraction for x >= |s| + 1; otherwise the ascending series for the
// lower function (with a recurrence lift when Re s <= -0.25, and the
// exponential-integral route at nonpositive integer s, where the series
// denominators vanish). Target accuracy ~1e-12 relative over the lattice-sum
// domain.
cdouble upper_incomplete_gamma(cdouble s, double x);

// Exponentially rescaled modified Bessel function
//   khat_nu(x) = e^{pi |Im nu| / 2} K_nu(x),   x > 0, |Re nu| <= 0.55.
// Evaluated by trapezoid quadrature of the cosh integral on a contour tilted
// to defuse the oscillation when |Im nu| is large; plain K_nu underflows for
// |Im nu| beyond ~500 while khat stays O(1), which is what the critical-line
// work needs.
cdouble bessel_k_scaled(cdouble nu, double x);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a) for real
// a > 0, x >= 0; the chi-square tail probability is Q(dof/2, stat/2).
double regularized_gamma_q(double a, double x);

}  // namespace circlezeros
