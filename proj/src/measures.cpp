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
#include "circlezeros/measures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace circlezeros {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_abs_or_neg_inf(double v) {
    v = std::abs(v);
    return v == 0.0 ? kNegInf : std::log(v);
}

// log|Delta| over the points e^{i angle}.
double log_vdm_of_angles(const std::vector<double>& angles) {
    std::vector<cdouble> pts;
    pts.reserve(angles.size());
    for (double a : angles) pts.emplace_back(std::cos(a), std::sin(a));
    return log_vandermonde_abs(pts);
}

// Shared product for the real-coefficient density and Jacobian:
//   sum_m log|e^{it_m} - e^{-it_m}| + sum_{j<k} (log|e^{it_k} - e^{it_j}|
//                                              + log|e^{it_k} - e^{-it_j}|)
// written through |e^{iu} - e^{iv}| = 2|sin((u - v)/2)|.
double log_real_case_product(const std::vector<double>& t) {
    double acc = 0.0;
    for (double tm : t) {
        acc += log_abs_or_neg_inf(2.0 * std::sin(tm));
        if (acc == kNegInf) return kNegInf;
    }
    for (std::size_t j = 0; j < t.size(); ++j) {
        for (std::size_t k = j + 1; k < t.size(); ++k) {
            acc += log_abs_or_neg_inf(2.0 * std::sin(0.5 * (t[k] - t[j])));
            acc += log_abs_or_neg_inf(2.0 * std::sin(0.5 * (t[k] + t[j])));
            if (acc == kNegInf) return kNegInf;
        }
    }
    return acc;
}

}  // namespace

DensityKind DensityKind::thm1_even(int n) {
    if (n % 2 != 0)
        throw DomainError("THM1_EVEN density requires an even degree");
    return {DensityTag::THM1_EVEN, n};
}

const char* DensityKind::name() const {
    switch (tag) {
        case DensityTag::COE: return "COE";
        case DensityTag::CUE: return "CUE";
        case DensityTag::THM1_EVEN: return "THM1_EVEN";
        case DensityTag::THM2_REAL: return "THM2_REAL";
        case DensityTag::USP_HAAR: return "USP_HAAR";
    }
    return "?";
}

double jacobian_complex_general(const ZeroConfiguration& zc) {
    const int N = zc.total_degree();
    if (N < 1) throw DomainError("empty zero configuration");
    const std::size_t M = zc.off_pairs.size();

    const std::vector<cdouble> roots = all_roots(zc);
    const double logv = log_vandermonde_abs(roots);
    if (logv == kNegInf) return 0.0;

    double log_acc = logv;
    for (const auto& pr : zc.off_pairs) log_acc -= std::log(pr.first);

    if (N % 2 == 1) {
        log_acc += (static_cast<double>(M) - 0.5 * (N - 1)) * kLn2;
    } else {
        const cdouble e_half =
            elementary_symmetric(static_cast<std::size_t>(N) / 2, roots);
        const double ae = std::abs(e_half);
        if (ae == 0.0) return 0.0;  // boundary of the support, not an error
        log_acc += (static_cast<double>(M) - 0.5 * N) * kLn2 + std::log(ae);
    }
    return std::exp(log_acc);
}

double jacobian_complex_circle(const std::vector<double>& deltas) {
    ZeroConfiguration zc;
    zc.on_circle = deltas;
    return jacobian_complex_general(zc);
}

double jacobian_real(const std::vector<double>& t, DegreeParity parity) {
    (void)parity;  // both parities share the same value
    const double lg = log_real_case_product(t);
    return lg == kNegInf ? 0.0 : std::exp(lg);
}

double log_density(const DensityKind& kind, const std::vector<double>& angles) {
    if (angles.size() != static_cast<std::size_t>(kind.arity)) {
        throw ArityMismatch(std::string("angle count does not match density ") +
                                kind.name(),
                            static_cast<std::size_t>(kind.arity), angles.size());
    }
    switch (kind.tag) {
        case DensityTag::COE:
            return log_vdm_of_angles(angles);
        case DensityTag::CUE:
            return 2.0 * log_vdm_of_angles(angles);
        case DensityTag::THM1_EVEN: {
            const double lv = log_vdm_of_angles(angles);
            if (lv == kNegInf) return kNegInf;
            std::vector<cdouble> pts;
            pts.reserve(angles.size());
            for (double a : angles) pts.emplace_back(std::cos(a), std::sin(a));
            const cdouble e_half = elementary_symmetric(angles.size() / 2, pts);
            const double ae = std::abs(e_half);
            return ae == 0.0 ? kNegInf : std::log(ae) + lv;
        }
        case DensityTag::THM2_REAL:
            return log_real_case_product(angles);
        case DensityTag::USP_HAAR:
            return 2.0 * log_real_case_product(angles);
    }
    throw DomainError("unknown density tag");
}

double coe_normalization(int n) {
    // 1 / ((4 sqrt(pi))^N Gamma(1 + N/2)); for N=1 this is 1/(2 pi) and for
    // N=2 it is 1/(16 pi), matching direct integration of |Delta| over the
    // full torus.
    const double log4sqrtpi = std::log(4.0) + 0.5 * std::log(kPi);
    return std::exp(-n * log4sqrtpi - std::lgamma(1.0 + 0.5 * n));
}

namespace {

std::vector<cdouble> roots_from_params(CoeffMap map, std::size_t n_pairs,
                                       const std::vector<double>& point) {
    std::vector<cdouble> roots;
    if (map == CoeffMap::COMPLEX_ODD || map == CoeffMap::COMPLEX_EVEN) {
        if (point.size() < 2 * n_pairs)
            throw DomainError("parameter vector shorter than its pair block");
        roots.reserve(point.size());
        for (std::size_t m = 0; m < n_pairs; ++m) {
            const double rho = point[2 * m];
            const double theta = point[2 * m + 1];
            if (rho <= 0.0) throw DomainError("pair modulus must be positive");
            const cdouble dir(std::cos(theta), std::sin(theta));
            roots.push_back(rho * dir);
            roots.push_back(dir / rho);
        }
        for (std::size_t j = 2 * n_pairs; j < point.size(); ++j)
            roots.emplace_back(std::cos(point[j]), std::sin(point[j]));
    } else {
        roots.reserve(2 * point.size() + 1);
        for (double t : point) {
            roots.emplace_back(std::cos(t), std::sin(t));
            roots.emplace_back(std::cos(t), -std::sin(t));
        }
        if (map == CoeffMap::REAL_ODD) roots.emplace_back(-1.0, 0.0);
    }
    return roots;
}

std::vector<cdouble> coeffs_from_roots(const std::vector<cdouble>& roots) {
    const std::size_t n = roots.size();
    const std::vector<cdouble> e = elementary_symmetric_table(roots, n);
    std::vector<cdouble> a(n);
    double sign = -1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        a[k - 1] = sign * e[k];
        sign = -sign;
    }
    return a;
}

double min_pairwise_distance(const std::vector<cdouble>& roots) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j)
        for (std::size_t k = j + 1; k < roots.size(); ++k)
            best = std::min(best, std::abs(roots[k] - roots[j]));
    return best;
}

}  // namespace

double finite_difference_jacobian(CoeffMap map, std::size_t n_pairs,
                                  const std::vector<double>& point, double step) {
    if (step <= 0.0) throw DomainError("finite-difference step must be positive");
    const std::size_t P = point.size();
    if (P == 0) throw DomainError("empty parameter vector");

    {
        const std::vector<cdouble> center = roots_from_params(map, n_pairs, point);
        if (min_pairwise_distance(center) <= 10.0 * step)
            throw DegenerateInput(
                "roots closer than 10x the step; differencing cannot resolve them");
    }

    const bool complex_map =
        map == CoeffMap::COMPLEX_ODD || map == CoeffMap::COMPLEX_EVEN;
    if (complex_map) {
        const std::size_t N = P;  // 2M + L parameters = degree
        if (map == CoeffMap::COMPLEX_ODD && N % 2 == 0)
            throw DomainError("COMPLEX_ODD map needs an odd degree");
        if (map == CoeffMap::COMPLEX_EVEN && N % 2 == 1)
            throw DomainError("COMPLEX_EVEN map needs an even degree");
        const std::size_t K = N / 2;  // free complex coefficients a_1..a_K

        Eigen::MatrixXd D(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
        std::vector<double> probe = point;
        for (std::size_t col = 0; col < P; ++col) {
            probe[col] = point[col] + step;
            const std::vector<cdouble> ap =
                coeffs_from_roots(roots_from_params(map, n_pairs, probe));
            probe[col] = point[col] - step;
            const std::vector<cdouble> am =
                coeffs_from_roots(roots_from_params(map, n_pairs, probe));
            probe[col] = point[col];

            for (std::size_t n = 1; n <= K; ++n) {
                const cdouble diff = ap[n - 1] - am[n - 1];
                D(static_cast<Eigen::Index>(2 * (n - 1)),
                  static_cast<Eigen::Index>(col)) = diff.real() / (2.0 * step);
                D(static_cast<Eigen::Index>(2 * (n - 1) + 1),
                  static_cast<Eigen::Index>(col)) = diff.imag() / (2.0 * step);
            }
            if (map == CoeffMap::COMPLEX_ODD) {
                // phi = arg a_N. Differencing args directly would tear at the
                // branch cut; the relative rotation arg(a_N^+ conj(a_N^-)) is
                // cut-free for small steps.
                const double dphi = std::arg(ap[N - 1] * std::conj(am[N - 1]));
                D(static_cast<Eigen::Index>(N - 1), static_cast<Eigen::Index>(col)) =
                    dphi / (2.0 * step);
            }
        }
        return std::abs(D.partialPivLu().determinant());
    }

    // Real maps: M parameters, M real coefficient coordinates.
    const std::size_t M = P;
    Eigen::MatrixXd D(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
    std::vector<double> probe = point;
    for (std::size_t col = 0; col < M; ++col) {
        probe[col] = point[col] + step;
        const std::vector<cdouble> ap =
            coeffs_from_roots(roots_from_params(map, n_pairs, probe));
        probe[col] = point[col] - step;
        const std::vector<cdouble> am =
            coeffs_from_roots(roots_from_params(map, n_pairs, probe));
        probe[col] = point[col];
        for (std::size_t r = 0; r < M; ++r) {
            D(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
                (ap[r].real() - am[r].real()) / (2.0 * step);
        }
    }
    return std::abs(D.partialPivLu().determinant());
}

FdCheckedResult finite_difference_jacobian_checked(CoeffMap map,
                                                   std::size_t n_pairs,
                                                   const std::vector<double>& point,
                                                   double step) {
    FdCheckedResult r;
    r.value = finite_difference_jacobian(map, n_pairs, point, step);
    r.value_2h = finite_difference_jacobian(map, n_pairs, point, 2.0 * step);
    // Central differences are second order, so the h-step error is about a
    // quarter of the 2h-step error; their gap over 3 estimates it.
    r.error_estimate = std::abs(r.value - r.value_2h) / 3.0;
    return r;
}

double fd_jacobian_complex(const ZeroConfiguration& zc, double step) {
    std::vector<double> point;
    point.reserve(static_cast<std::size_t>(zc.total_degree()));
    for (const auto& pr : zc.off_pairs) {
        point.push_back(pr.first);
        point.push_back(pr.second);
    }
    for (double d : zc.on_circle) point.push_back(d);
    const CoeffMap map = (zc.total_degree() % 2 == 1) ? CoeffMap::COMPLEX_ODD
                                                      : CoeffMap::COMPLEX_EVEN;
    return finite_difference_jacobian(map, zc.off_pairs.size(), point, step);
}

double fd_jacobian_real(const std::vector<double>& t, DegreeParity parity,
                        double step) {
    const CoeffMap map =
        parity == DegreeParity::Even ? CoeffMap::REAL_EVEN : CoeffMap::REAL_ODD;
    return finite_difference_jacobian(map, 0, t, step);
}

}  // namespace circlezeros
