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
#include <cstddef>
#include <vector>

#include "circlezeros/errors.hpp"

namespace circlezeros {

using cdouble = std::complex<double>;

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what) : Error(what) {}
};

class PoleProximity : public Error {
 public:
  explicit PoleProximity(const std::string& what) : Error(what) {}
};

// Positive-definite binary quadratic form a m^2 + b m n + c n^2.
struct QuadraticForm {
  double a;
  double b;
  double c;

  QuadraticForm(double a_, double b_, double c_);

  double discriminant() const { return b * b - 4.0 * a * c; }
  double eval(double m, double n) const {
    return a * m * m + b * m * n + c * n * n;
  }
};

// Point z = x + iy in the upper half plane. The flag records membership in
// the standard fundamental domain: -1/2 < x <= 1/2 and |z| > 1, with |z| = 1
// resolved to x >= 0.
struct UpperHalfPoint {
  double x;
  double y;
  bool in_fundamental_domain;
};

struct ReducedForm {
  UpperHalfPoint point;
  // a*y, which equals sqrt(|disc|)/2 and is invariant under the reduction;
  // it is the factor relating the form's zeta to the Eisenstein series.
  double scale;
};

ReducedForm reduce_form(const QuadraticForm& q);

// Coefficients of the reduced form equivalent to q (same discriminant).
QuadraticForm reduced_equivalent(const QuadraticForm& q);

struct DirectSumResult {
  cdouble value;
  // Rigorous bound on the dropped tail, from the form's smallest eigenvalue.
  double tail_bound;
  long terms;
};

// Truncated lattice sum of Q(m,n)^{-s} over 0 < max(|m|,|n|) <= radius.
// Requires Re s > 1.
DirectSumResult epstein_direct(const QuadraticForm& q, cdouble s, long radius);

// Completed function Lambda(s) = (sqrt(|disc|)/2pi)^s Gamma(s) L_Q(s) by the
// theta-split incomplete-gamma representation, valid in the whole plane minus
// the poles at 0 and 1. The representation is symmetric under s -> 1-s term
// by term; the implementation evaluates a canonical representative of
// {s, 1-s} so the functional equation holds exactly, not just approximately.
cdouble epstein_completed(const QuadraticForm& q, cdouble s);

// Z(t) = e^{pi t / 2} Lambda(1/2 + it), real for real forms. The exponential
// rescaling keeps values O(1) far up the line where Lambda itself underflows;
// evaluated through the Fourier expansion of the Eisenstein series with
// rescaled Bessel factors, which stays fully significant at large t where the
// theta-split sum loses everything to cancellation.
double hardy_z(const QuadraticForm& q, double t);

struct CriticalZero {
  double t;
  double refinement_width;
};

// Two sign changes closer than three grid steps: the scan may have missed a
// zero between them. Attached to the result, never thrown.
struct StepTooCoarse {
  double t_first;
  double t_second;
};

struct ScanResult {
  std::vector<CriticalZero> zeros;
  std::vector<StepTooCoarse> warnings;
  double t_min;
  double t_max;
  double step;
};

// Sign-change scan of Z on a uniform grid, each change refined by bisection
// to width 1e-9. Work is split into fixed windows overlapping by three steps
// and merged with proximity deduplication, so results are identical at any
// worker count.
ScanResult scan_critical_line(const QuadraticForm& q, double t_min,
                              double t_max, double step = 0.01,
                              int workers = 1);

struct ZeroSpacingData {
  // Pooled over forms, consecutive-zero gaps rescaled by the local zero
  // density estimated from the scan itself.
  std::vector<double> unfolded_gaps;
  std::vector<double> raw_gaps;
  std::vector<ScanResult> scans;
  std::size_t zero_count;
};

ZeroSpacingData epstein_zero_spacings(const std::vector<QuadraticForm>& forms,
                                      double t_min, double t_max,
                                      double step = 0.01, int workers = 1);

}  // namespace circlezeros
