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

#include <vector>

#include "circlezeros/poly.hpp"

namespace circlezeros {

// Angle-space densities handled by this module. COE/CUE/THM1_EVEN live on the
// full circle with N angles; THM2_REAL and USP_HAAR live on (0, pi)^M, the
// upper-half-circle angles of conjugate root pairs.
enum class DensityTag { COE, CUE, THM1_EVEN, THM2_REAL, USP_HAAR };

struct DensityKind {
    DensityTag tag;
    int arity;  // N for circular kinds, M for the real-case kinds

    static DensityKind coe(int n) { return {DensityTag::COE, n}; }
    static DensityKind cue(int n) { return {DensityTag::CUE, n}; }
    static DensityKind thm1_even(int n);  // requires n even
    static DensityKind thm2_real(int m) { return {DensityTag::THM2_REAL, m}; }
    static DensityKind usp_haar(int m) { return {DensityTag::USP_HAAR, m}; }

    bool on_full_circle() const {
        return tag == DensityTag::COE || tag == DensityTag::CUE ||
               tag == DensityTag::THM1_EVEN;
    }
    const char* name() const;
};

enum class DegreeParity { Even, Odd };

// |Jacobian| of the coefficient-to-angle change of variables for a degree-N
// polynomial with all N zeros on the circle:
//   odd N:  2^{-(N-1)/2} |Delta|
//   even N: 2^{-N/2} |e_{N/2}| |Delta|
// where Delta is the Vandermonde of the zeros e^{i delta_j}.
double jacobian_complex_circle(const std::vector<double>& deltas);

// Same change of variables with M mirrored off-circle pairs present:
//   odd N:  2^{M-(N-1)/2} (prod_m 1/rho_m) |Delta(all N zeros)|
//   even N: 2^{M-N/2}   (prod_m 1/rho_m) |e_{N/2}(all N zeros)| |Delta|
// With M = 0 this reduces to jacobian_complex_circle exactly (same code path).
double jacobian_complex_general(const ZeroConfiguration& zc);

// Real-coefficient case, zeros e^{+-i t_m} (plus a fixed zero at -1 when the
// degree is odd; the value does not depend on the parity):
//   2^{M^2} | prod_m sin t_m | | prod_{j<k} sin((t_k-t_j)/2) sin((t_k+t_j)/2) |
double jacobian_real(const std::vector<double>& t,
                     DegreeParity parity = DegreeParity::Even);

// Unnormalized log-densities. COE = log|Delta|, CUE = 2 log|Delta| (computed
// as exactly twice the COE value), THM1_EVEN = log|e_{N/2}| + log|Delta|,
// THM2_REAL = sum_m log|e^{it_m} - e^{-it_m}|
//           + sum_{j<k} log|e^{it_k} - e^{it_j}| + log|e^{it_k} - e^{-it_j}|
// (the same product jacobian_real evaluates, so THM2_REAL(t) equals
// log jacobian_real(t)), and USP_HAAR = exactly twice THM2_REAL. Coincident
// angles give -inf exactly.
double log_density(const DensityKind& kind, const std::vector<double>& angles);

// COE normalization constant 1/((4 sqrt(pi))^N Gamma(1 + N/2)), exposed for
// documentation and sanity checks; the sampling pipelines never need absolute
// normalizations.
double coe_normalization(int n);

// Central-difference oracle for the closed-form Jacobians. Coordinates:
//   COMPLEX_ODD  params [rho_1, theta_1, .., rho_M, theta_M, delta_1..delta_L]
//                coeff coords (Re a_1, Im a_1, .., Re a_K, Im a_K, phi)
//                with K = (N-1)/2 and phi = arg a_N (branch-safe differencing)
//   COMPLEX_EVEN same params; coords (Re a_1, Im a_1, .., Re a_{N/2}, Im a_{N/2})
//   REAL_EVEN    params [t_1..t_M]; coords (a_1..a_M) of prod (z^2 - 2cos(t)z + 1)
//   REAL_ODD     same with an extra fixed root at -1 (degree 2M+1)
// Throws DegenerateInput when the roots at the center point are closer than
// 10 * step, where differencing cannot resolve the configuration.
enum class CoeffMap { COMPLEX_ODD, COMPLEX_EVEN, REAL_EVEN, REAL_ODD };

double finite_difference_jacobian(CoeffMap map, std::size_t n_pairs,
                                  const std::vector<double>& point, double step);

struct FdCheckedResult {
    double value;           // at the requested step
    double value_2h;        // at twice the step
    double error_estimate;  // |value - value_2h| / 3, Richardson style
};

FdCheckedResult finite_difference_jacobian_checked(CoeffMap map,
                                                   std::size_t n_pairs,
                                                   const std::vector<double>& point,
                                                   double step = 1e-5);

// Convenience wrappers building the parameter vector from structured input.
double fd_jacobian_complex(const ZeroConfiguration& zc, double step = 1e-5);
double fd_jacobian_real(const std::vector<double>& t, DegreeParity parity,
                        double step = 1e-5);

}  // namespace circlezeros
