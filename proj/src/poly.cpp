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
#include "circlezeros/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace circlezeros {

double TrigPoly::eval(double x) const {
    const double half = 0.5 * degree;
    double acc = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        const double freq = half - static_cast<double>(n);
        acc += c[n] * std::cos(freq * x) + d[n] * std::sin(freq * x);
    }
    return acc;
}

std::vector<cdouble> elementary_symmetric_table(const std::vector<cdouble>& xs,
                                                std::size_t kmax) {
    std::vector<cdouble> e(kmax + 1, cdouble(0.0, 0.0));
    e[0] = cdouble(1.0, 0.0);
    std::size_t filled = 0;  // highest order that can be nonzero so far
    for (const cdouble& x : xs) {
        ++filled;
        std::size_t top = std::min(filled, kmax);
        for (std::size_t k = top; k >= 1; --k) {
            e[k] += x * e[k - 1];
        }
    }
    return e;
}

cdouble elementary_symmetric(std::size_t n, const std::vector<cdouble>& xs) {
    if (n == 0) return cdouble(1.0, 0.0);
    if (n > xs.size()) return cdouble(0.0, 0.0);
    return elementary_symmetric_table(xs, n)[n];
}

double vandermonde_abs(const std::vector<cdouble>& xs) {
    double prod = 1.0;
    for (std::size_t j = 0; j < xs.size(); ++j)
        for (std::size_t k = j + 1; k < xs.size(); ++k)
            prod *= std::abs(xs[k] - xs[j]);
    return prod;
}

double log_vandermonde_abs(const std::vector<cdouble>& xs) {
    double acc = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        for (std::size_t k = j + 1; k < xs.size(); ++k) {
            double m = std::abs(xs[k] - xs[j]);
            if (m == 0.0) return -std::numeric_limits<double>::infinity();
            acc += std::log(m);
        }
    }
    return acc;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

SelfReciprocalPoly from_coefficients(const std::vector<cdouble>& coeffs,
                                     double tol) {
    const int N = static_cast<int>(coeffs.size());
    if (N < 1) throw DomainError("coefficient list must be nonempty");
    if (tol < 0.0) tol = 1e-10 * N;

    const cdouble aN = coeffs.back();
    const double mod = std::abs(aN);
    if (std::abs(mod - 1.0) > tol) throw UnitModulusViolation(mod);

    // Symmetry check a_{N-n} = a_N conj(a_n); report the worst offender.
    int worst_index = -1;
    double worst = 0.0;
    for (int n = 1; n <= N - 1; ++n) {
        const cdouble want = aN * std::conj(coeffs[static_cast<std::size_t>(n) - 1]);
        const double err = std::abs(coeffs[static_cast<std::size_t>(N - n) - 1] - want);
        if (err > worst) {
            worst = err;
            worst_index = n;
        }
    }
    if (worst > tol) throw SymmetryViolation(worst_index, worst);

    SelfReciprocalPoly p;
    p.degree = N;
    p.coeffs = coeffs;

    // A polynomial counts as real only when it is palindromic: all
    // coefficients real AND a_N = +1. Real coefficients with a_N = -1 are
    // valid self-reciprocal input but keep is_real unset, since several
    // real-case code paths (the even trigonometric form, the ordered
    // conjugate-angle extraction) rely on palindromy.
    bool real_palin = std::abs(aN - cdouble(1.0, 0.0)) <= tol;
    if (real_palin) {
        for (const cdouble& cc : coeffs) {
            if (std::abs(cc.imag()) > tol) {
                real_palin = false;
                break;
            }
        }
    }
    p.is_real = real_palin;

    // Canonicalize so the invariants hold exactly, not merely within tol: the
    // validation above bounds how far this moves anything.
    if (p.is_real) {
        for (auto& cc : p.coeffs) cc = cdouble(cc.real(), 0.0);
        p.coeffs.back() = cdouble(1.0, 0.0);
        for (int n = 1; n < N - n; ++n)
            p.coeffs[static_cast<std::size_t>(N - n) - 1] =
                p.coeffs[static_cast<std::size_t>(n) - 1];
    } else {
        p.coeffs.back() = aN / mod;
        const cdouble aN_unit = p.coeffs.back();
        for (int n = 1; n < N - n; ++n)
            p.coeffs[static_cast<std::size_t>(N - n) - 1] =
                aN_unit * std::conj(p.coeffs[static_cast<std::size_t>(n) - 1]);
        // Middle coefficient of even N must satisfy a = a_N conj(a); project
        // onto that line by averaging.
        if (N % 2 == 0 && N >= 2) {
            const std::size_t m = static_cast<std::size_t>(N / 2) - 1;
            p.coeffs[m] = 0.5 * (p.coeffs[m] + aN_unit * std::conj(p.coeffs[m]));
        }
    }
    return p;
}

std::vector<cdouble> all_roots(const ZeroConfiguration& zc) {
    std::vector<cdouble> roots;
    roots.reserve(zc.on_circle.size() + 2 * zc.off_pairs.size());
    for (double d : zc.on_circle) roots.emplace_back(std::cos(d), std::sin(d));
    for (const auto& [rho, theta] : zc.off_pairs) {
        const cdouble dir(std::cos(theta), std::sin(theta));
        roots.push_back(rho * dir);
        roots.push_back(dir / rho);
    }
    return roots;
}

SelfReciprocalPoly from_roots(const ZeroConfiguration& zc) {
    const std::vector<cdouble> roots = all_roots(zc);
    const std::size_t N = roots.size();
    if (N == 0) throw DomainError("zero configuration has no roots");
    const std::vector<cdouble> e = elementary_symmetric_table(roots, N);
    std::vector<cdouble> coeffs(N);
    double sign = -1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        coeffs[n - 1] = sign * e[n];
        sign = -sign;
    }
    return from_coefficients(coeffs, 1e-10 * static_cast<double>(N));
}

TrigPoly to_trigonometric(const SelfReciprocalPoly& p, int branch) {
    const int N = p.degree;
    TrigPoly t;
    t.degree = N;
    t.branch_sign = (branch < 0) ? -1 : +1;

    // Multiplying p(e^{ix}) by s^{-1} e^{-iNx/2} with s = a_N^{1/2} pairs the
    // n-th and (N-n)-th coefficients into one real cosine/sine term:
    //   w_n e^{i(N/2-n)x} + conj(w_n) e^{-i(N/2-n)x}
    // where w_n = a_n / s, using a_{N-n} = a_N conj(a_n) and 1/s = conj(s).
    cdouble s = std::sqrt(p.coeffs.back());
    if (t.branch_sign < 0) s = -s;
    const cdouble inv_s = std::conj(s);  // |s| = 1

    const std::size_t half = static_cast<std::size_t>(N) / 2;
    t.c.assign(half + 1, 0.0);
    t.d.assign(half + 1, 0.0);
    for (std::size_t n = 0; n <= half; ++n) {
        const cdouble w = inv_s * p.a(static_cast<int>(n));
        if (2 * n == static_cast<std::size_t>(N)) {
            // Middle term of even N: frequency zero, appears once. The
            // symmetry forces w real here; any residual imaginary part is
            // validation slack.
            t.c[n] = w.real();
            t.d[n] = 0.0;
        } else {
            t.c[n] = 2.0 * w.real();
            t.d[n] = -2.0 * w.imag();
        }
    }

    // Palindromic real input makes every w_n real, so the sine part vanishes
    // identically; pin it to exact zeros rather than leaving rounding dust.
    if (p.is_real) {
        for (auto& v : t.d) v = 0.0;
    }
    return t;
}

}  // namespace circlezeros
