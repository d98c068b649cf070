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
#include "circlezeros/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace circlezeros {

namespace {

using Mat = Eigen::MatrixXcd;

// In-place Parlett-Reinsch balancing with power-of-2 scale factors (exact in
// floating point). The companion matrix of a polynomial with coefficients of
// size binom(N, N/2) is badly out of scale, and the QR iteration's accuracy
// degrades with the norm imbalance.
void balance_in_place(Mat& A) {
    const int n = static_cast<int>(A.rows());
    const double radix = 2.0;
    const double sq = radix * radix;
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(A(j, i));
                r += std::abs(A(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sq;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sq;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                const double ginv = 1.0 / f;
                A.row(i) *= ginv;
                A.col(i) *= f;
            }
        }
    }
}

// Horner evaluation of p and p' together, plus the running bound
// B = sum |a_k| |z|^{N-k} that turns |p(z)| into a backward-error measure:
// |p(z)| <= mu * eps * B means z is an exact root of a polynomial whose
// coefficients differ relatively by about mu * eps.
struct HornerResult {
    cdouble p;
    cdouble dp;
    double bound;
};

HornerResult horner_full(const SelfReciprocalPoly& poly, cdouble z) {
    const double az = std::abs(z);
    cdouble p(1.0, 0.0);
    cdouble dp(0.0, 0.0);
    double b = 1.0;
    for (const cdouble& a : poly.coeffs) {
        dp = dp * z + p;
        p = p * z + a;
        b = b * az + std::abs(a);
    }
    return {p, dp, b};
}

}  // namespace

RootFindReport find_roots(const SelfReciprocalPoly& poly) {
    const int N = poly.degree;
    RootFindReport report;
    report.raw_roots.resize(static_cast<std::size_t>(N));

    if (N == 1) {
        report.raw_roots[0] = -poly.coeffs[0];
        report.residual_max = std::abs(poly.eval(report.raw_roots[0]));
        return report;
    }

    // Companion matrix: subdiagonal of ones, last column -a_{N-i}.
    Mat C = Mat::Zero(N, N);
    for (int i = 0; i + 1 < N; ++i) C(i + 1, i) = cdouble(1.0, 0.0);
    for (int i = 0; i < N; ++i)
        C(i, N - 1) = -poly.coeffs[static_cast<std::size_t>(N - i) - 1];

    balance_in_place(C);
    Eigen::ComplexSchur<Mat> schur(C, /*computeU=*/false);
    if (schur.info() != Eigen::Success) {
        throw ConvergenceFailure("companion Schur iteration did not converge",
                                 std::move(report));
    }
    for (int i = 0; i < N; ++i) report.raw_roots[static_cast<std::size_t>(i)] = schur.matrixT()(i, i);

    // Aberth-Ehrlich polish. Backward-error stopping: once |p(z)| is a few
    // ulps of the evaluation bound, z cannot be improved in double precision.
    const double eps = std::numeric_limits<double>::epsilon();
    const int max_sweeps = 60;
    std::vector<char> done(static_cast<std::size_t>(N), 0);
    int sweeps = 0;
    for (; sweeps < max_sweeps; ++sweeps) {
        bool all_done = true;
        for (int i = 0; i < N; ++i) {
            if (done[static_cast<std::size_t>(i)]) continue;
            cdouble z = report.raw_roots[static_cast<std::size_t>(i)];
            const HornerResult h = horner_full(poly, z);
            if (std::abs(h.p) <= 8.0 * eps * h.bound) {
                done[static_cast<std::size_t>(i)] = 1;
                continue;
            }
            all_done = false;
            if (h.dp == cdouble(0.0, 0.0)) {
                // Exactly critical point: nudge off it and retry next sweep.
                report.raw_roots[static_cast<std::size_t>(i)] =
                    z + cdouble(1e-12, 1e-12) * (1.0 + std::abs(z));
                continue;
            }
            const cdouble w = h.p / h.dp;
            cdouble s(0.0, 0.0);
            for (int j = 0; j < N; ++j) {
                if (j == i) continue;
                const cdouble diff = z - report.raw_roots[static_cast<std::size_t>(j)];
                if (diff != cdouble(0.0, 0.0)) s += 1.0 / diff;
            }
            const cdouble denom = cdouble(1.0, 0.0) - w * s;
            const cdouble corr = (denom == cdouble(0.0, 0.0)) ? w : w / denom;
            report.raw_roots[static_cast<std::size_t>(i)] = z - corr;
        }
        if (all_done) break;
    }
    report.iterations = sweeps;

    double res = 0.0;
    double worst_ratio = 0.0;
    for (const cdouble& z : report.raw_roots) {
        const HornerResult h = horner_full(poly, z);
        res = std::max(res, std::abs(h.p));
        worst_ratio = std::max(worst_ratio, std::abs(h.p) / (eps * h.bound));
    }
    report.residual_max = res;

    // Primary acceptance is backward error: each root must be an exact root
    // of a polynomial whose coefficients are a few ulps away, at any degree.
    if (worst_ratio > 64.0) {
        throw ConvergenceFailure(
            "refinement stalled with backward error " +
                std::to_string(worst_ratio) + " times the rounding bound",
            std::move(report));
    }

    // Verify by re-expanding the root product, which catches a wholesale
    // wrong eigenvalue set. The expansion itself rounds against intermediate
    // elementary symmetric functions that can dwarf the final coefficients
    // at high degree, so mismatch is judged net of that rounding allowance
    // (the same recurrence run on absolute values).
    const std::vector<cdouble> e = elementary_symmetric_table(
        report.raw_roots, static_cast<std::size_t>(N));
    std::vector<double> mag(static_cast<std::size_t>(N) + 1, 0.0);
    mag[0] = 1.0;
    {
        std::size_t filled = 0;
        for (const cdouble& z : report.raw_roots) {
            ++filled;
            const double az = std::abs(z);
            const std::size_t top = std::min(filled, static_cast<std::size_t>(N));
            for (std::size_t k = top; k >= 1; --k) mag[k] += az * mag[k - 1];
        }
    }
    double scale = 1.0;  // max-norm of the input including the leading 1
    for (const cdouble& a : poly.coeffs) scale = std::max(scale, std::abs(a));
    const double gamma = 2.0 * eps * static_cast<double>(N);
    double err = 0.0;
    double sign = -1.0;
    for (int n = 1; n <= N; ++n) {
        const double miss = std::abs(sign * e[static_cast<std::size_t>(n)] -
                                     poly.coeffs[static_cast<std::size_t>(n) - 1]) -
                            gamma * mag[static_cast<std::size_t>(n)];
        err = std::max(err, miss);
        sign = -sign;
    }
    if (err / scale > 1e-7 * N) {
        throw ConvergenceFailure(
            "root set does not reproduce the coefficients (max-norm rel err " +
                std::to_string(err / scale) + ")",
            std::move(report));
    }
    return report;
}

ZeroConfiguration circle_classify(const RootFindReport& report, double tol) {
    const std::size_t N = report.raw_roots.size();
    if (tol < 0.0) tol = 1e-8 * static_cast<double>(N);

    ZeroConfiguration zc;
    zc.tolerance_used = tol;

    std::vector<cdouble> outside;
    std::vector<cdouble> inside;
    for (const cdouble& z : report.raw_roots) {
        const double m = std::abs(z);
        if (std::abs(m - 1.0) < tol) {
            double ang = std::arg(z);
            if (ang < 0.0) ang += kTwoPi;
            if (ang >= kTwoPi) ang = 0.0;
            zc.on_circle.push_back(ang);
        } else if (m > 1.0) {
            outside.push_back(z);
        } else {
            inside.push_back(z);
        }
    }
    std::sort(zc.on_circle.begin(), zc.on_circle.end());

    if (outside.size() != inside.size()) {
        const cdouble offending =
            outside.size() > inside.size()
                ? outside.front()
                : inside.front();
        throw UnpairedRoot("off-circle roots do not split evenly across the circle",
                           offending);
    }

    // Deterministic pairing: process outside roots in a sorted order and
    // greedily take the nearest unused inside root to the reflected target.
    std::sort(outside.begin(), outside.end(), [](const cdouble& a, const cdouble& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<char> used(inside.size(), 0);
    for (const cdouble& beta : outside) {
        const cdouble target = 1.0 / std::conj(beta);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = inside.size();
        for (std::size_t j = 0; j < inside.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(inside[j] - target);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        if (best_j == inside.size() || best > 10.0 * tol) {
            throw UnpairedRoot("no reflected partner within tolerance", beta);
        }
        used[best_j] = 1;
        double theta = std::arg(beta);
        if (theta < 0.0) theta += kTwoPi;
        if (theta >= kTwoPi) theta = 0.0;
        zc.off_pairs.emplace_back(std::abs(beta), theta);
    }
    std::sort(zc.off_pairs.begin(), zc.off_pairs.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second < b.second;
                  return a.first < b.first;
              });
    return zc;
}

}  // namespace circlezeros
