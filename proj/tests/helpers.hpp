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

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "circlezeros/poly.hpp"
#include "circlezeros/seeding.hpp"

namespace testutil {

inline double rel_err(std::complex<double> got, std::complex<double> want) {
    return std::abs(got - want) / std::abs(want);
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

// n angles in [0, 2pi) with pairwise circular separation >= min_sep, by
// resampling. min_sep * n must stay well below 2pi.
inline std::vector<double> separated_circle_angles(circlezeros::Rng& rng,
                                                   std::size_t n,
                                                   double min_sep) {
    const double two_pi = circlezeros::kTwoPi;
    std::vector<double> a(n);
    for (int tries = 0; tries < 10000; ++tries) {
        for (auto& v : a) v = rng.uniform(0.0, two_pi);
        std::vector<double> s = a;
        std::sort(s.begin(), s.end());
        double gap = two_pi - s.back() + s.front();
        for (std::size_t i = 1; i < n; ++i) gap = std::min(gap, s[i] - s[i - 1]);
        if (n < 2 || gap >= min_sep) return a;
    }
    return a;
}

// n angles in (lo, hi) pairwise separated by min_sep and at least min_sep
// from both endpoints; used for the conjugate-pair domain (0, pi).
inline std::vector<double> separated_interval_angles(circlezeros::Rng& rng,
                                                     std::size_t n, double lo,
                                                     double hi,
                                                     double min_sep) {
    std::vector<double> a(n);
    for (int tries = 0; tries < 10000; ++tries) {
        for (auto& v : a) v = rng.uniform(lo + min_sep, hi - min_sep);
        std::vector<double> s = a;
        std::sort(s.begin(), s.end());
        bool ok = true;
        for (std::size_t i = 1; i < n; ++i) ok = ok && (s[i] - s[i - 1] >= min_sep);
        if (ok) return a;
    }
    return a;
}

// Random zero configuration with L on-circle angles and M mirrored pairs,
// all angles jointly separated so every pairwise root distance is bounded
// away from zero (safe for root finding and finite differencing).
inline circlezeros::ZeroConfiguration random_zero_config(circlezeros::Rng& rng,
                                                         std::size_t L,
                                                         std::size_t M,
                                                         double min_sep = 0.2) {
    const std::vector<double> angles =
        separated_circle_angles(rng, L + M, min_sep);
    circlezeros::ZeroConfiguration zc;
    for (std::size_t i = 0; i < L; ++i) zc.on_circle.push_back(angles[i]);
    std::sort(zc.on_circle.begin(), zc.on_circle.end());
    for (std::size_t i = 0; i < M; ++i) {
        zc.off_pairs.emplace_back(rng.uniform(1.15, 2.0), angles[L + i]);
    }
    return zc;
}

}  // namespace testutil
