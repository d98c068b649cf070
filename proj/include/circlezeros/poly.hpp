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

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

// Monic degree-N polynomial z^N + a_1 z^{N-1} + ... + a_N whose coefficients
// satisfy the self-reciprocal symmetry a_{N-n} = a_N * conj(a_n) with |a_N| = 1.
// Zeros of such a polynomial lie on the unit circle or come in pairs mirrored
// across it. The leading 1 is implicit; coeffs holds a_1..a_N.
struct SelfReciprocalPoly {
    int degree = 0;
    std::vector<cdouble> coeffs;  // a_1 .. a_N
    bool is_real = false;         // all coefficients real and a_N == +1

    cdouble a(int n) const {
        // a_0 == 1 by monicity; a(n) for 1 <= n <= N reads from storage.
        if (n == 0) return cdouble(1.0, 0.0);
        return coeffs[static_cast<std::size_t>(n) - 1];
    }

    cdouble eval(cdouble z) const {
        cdouble acc(1.0, 0.0);
        for (const cdouble& c : coeffs) acc = acc * z + c;
        return acc;
    }
};

// Real trigonometric form of a self-reciprocal polynomial:
//   g(x) = sum_{n=0}^{floor(N/2)} c_n cos((N/2 - n) x) + d_n sin((N/2 - n) x),
// obtained from a_N^{-1/2} e^{-iNx/2} p(e^{ix}). Frequencies are half-integers
// when N is odd. branch_sign records which square root of a_N was used; the
// two branches differ by an overall sign.
struct TrigPoly {
    int degree = 0;  // degree N of the source polynomial
    std::vector<double> c;
    std::vector<double> d;
    int branch_sign = +1;

    double eval(double x) const;
};

// Zeros of a self-reciprocal polynomial, split into on-circle angles and
// mirrored off-circle pairs. A pair (rho, theta) with rho > 1 stands for the
// two roots rho e^{i theta} and e^{i theta} / rho.
struct ZeroConfiguration {
    std::vector<double> on_circle;                  // sorted, in [0, 2pi)
    std::vector<std::pair<double, double>> off_pairs;  // (rho > 1, theta in [0, 2pi))
    double tolerance_used = 0.0;

    int total_degree() const {
        return static_cast<int>(on_circle.size() + 2 * off_pairs.size());
    }
};

class SymmetryViolation : public Error {
public:
    SymmetryViolation(int index, double magnitude)
        : Error("coefficient symmetry violated at index " + std::to_string(index) +
                " by " + std::to_string(magnitude)),
          index(index),
          magnitude(magnitude) {}
    int index;
    double magnitude;
};

class UnitModulusViolation : public Error {
public:
    explicit UnitModulusViolation(double modulus)
        : Error("|a_N| = " + std::to_string(modulus) + " is not 1"),
          modulus(modulus) {}
    double modulus;
};

// e_n(xs): sum over all n-element products of distinct entries. e_0 = 1 and
// e_n = 0 for n > |xs|. Built by the one-pass table recurrence, O(n |xs|).
cdouble elementary_symmetric(std::size_t n, const std::vector<cdouble>& xs);

// Full table e_0..e_kmax in one pass; used whenever several orders are needed.
std::vector<cdouble> elementary_symmetric_table(const std::vector<cdouble>& xs,
                                                std::size_t kmax);

// prod_{j<k} |x_k - x_j|. Empty and singleton inputs give 1.
double vandermonde_abs(const std::vector<cdouble>& xs);

// log of the above; -inf exactly when two entries coincide. Preferred for
// large inputs where the plain product under- or overflows.
double log_vandermonde_abs(const std::vector<cdouble>& xs);

// binomial(n, k) as a double (exact for the sizes used here).
double binomial(int n, int k);

// Validate a_1..a_N as a self-reciprocal coefficient list and build the
// polynomial. tol < 0 selects the default 1e-10 * N. After validation the
// stored coefficients are canonicalized so the type invariants hold exactly:
// a_N is rescaled to unit modulus, the upper half is regenerated from the
// lower half, and real inputs (with a_N = +1) get their imaginary parts
// zeroed. Canonicalization moves each coefficient by at most O(tol).
SelfReciprocalPoly from_coefficients(const std::vector<cdouble>& coeffs,
                                     double tol = -1.0);

// Expand prod (z - root) over the configuration's roots: a_n = (-1)^n e_n.
SelfReciprocalPoly from_roots(const ZeroConfiguration& zc);

// Convert to the real trigonometric form. branch = +1 uses the principal
// square root of a_N, branch = -1 the other one.
TrigPoly to_trigonometric(const SelfReciprocalPoly& p, int branch = +1);

// List all roots of the configuration explicitly (on-circle angles first,
// then each pair expanded to its two members).
std::vector<cdouble> all_roots(const ZeroConfiguration& zc);

}  // namespace circlezeros
