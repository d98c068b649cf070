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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "circlezeros/samplers.hpp"

namespace circlezeros {

// Nearest-neighbor gaps rescaled so the mean gap is 1. For N sorted angles on
// the circle the N circular gaps sum to 2pi, so the unfolding factor is the
// constant mean density N / 2pi.
struct SpacingSample {
    std::vector<double> unfolded_gaps;
    EnsembleSpec source;
};

struct Histogram {
    std::vector<double> edges;        // bins + 1 entries
    std::vector<std::size_t> counts;  // bins entries
    std::vector<double> mass;         // counts / total, sums to 1
};

// Pair-correlation estimate on a grid of circular separations.
struct R2Estimate {
    std::vector<double> grid;         // bin centers
    std::vector<double> values;       // estimated R_2, >= 0
    std::vector<std::size_t> counts;  // raw pair counts per bin
    bool has_empty_bins = false;      // zero-count bins present (grid too fine)
};

struct FractionResult {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t used = 0;
    std::size_t skipped = 0;  // polynomials whose root finder failed
};

struct DunnageResult {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t used = 0;
    std::size_t skipped = 0;
};

struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    std::size_t points_used = 0;
};

enum class TestKind { KS, CHI2 };

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
};

// Mean fraction of zeros on the unit circle over a polynomial batch, with the
// sample standard error. Root-finder failures are skipped and counted.
FractionResult fraction_on_circle(const std::vector<SelfReciprocalPoly>& polys,
                                  double tol = -1.0, unsigned workers = 1);

// Monte Carlo mean count of real zeros in [0, 2pi) of the random cosine sum
// T(x) = sum_{n=1}^{N} c_n cos(nx) with c_n iid standard normal. Counting is
// exact up to root-finder tolerance: T lifts to a degree-2N real palindromic
// polynomial via z^{N+n} + z^{N-n}, whose on-circle roots are the real zeros.
DunnageResult dunnage_real_zero_count(int N, std::size_t samples,
                                      std::uint64_t seed, unsigned workers = 1);

// Circular nearest-neighbor gaps of every set in the batch, unfolded by
// N / 2pi. Requires a circle-domain batch whose sets all have >= 2 angles.
SpacingSample unfolded_gaps(const SampleBatch& batch);

// Histogram of unfolded gaps over [0, 5] with the requested number of bins;
// gaps beyond 5 land in the last bin so the mass always sums to 1.
Histogram histogram_from_gaps(const std::vector<double>& gaps, std::size_t bins);

// unfolded_gaps + histogram_from_gaps in one call.
std::pair<SpacingSample, Histogram> spacing_histogram(const SampleBatch& batch,
                                                      std::size_t bins);

// Pair-correlation estimator: every ordered pair in a set contributes its
// circular separation (in [0, pi]); counts are normalized so independent
// uniform angles give R_2 = 1 at every separation. delta_edges are bin edges,
// positive and strictly increasing.
R2Estimate pair_correlation(const SampleBatch& batch,
                            const std::vector<double>& delta_edges);

// Least-squares slope of log R_2 against log separation over bin centers in
// [lo, hi]; needs at least 4 positive-valued points.
SlopeFit repulsion_exponent(const R2Estimate& r2, double lo, double hi);

// Exact two-sample Kolmogorov-Smirnov statistic with the asymptotic p-value.
TestResult ks_two_sample(std::vector<double> xs, std::vector<double> ys);

// Two-sample chi-square over the given bin edges, with adjacent bins pooled
// until every pooled bin has expected count >= 5 in both samples.
TestResult chi2_two_sample_binned(const std::vector<double>& xs,
                                  const std::vector<double>& ys,
                                  const std::vector<double>& edges);

// Dispatcher; CHI2 uses chi2_bins equal-width bins over the combined range.
TestResult two_sample_test(const std::vector<double>& xs,
                           const std::vector<double>& ys, TestKind kind,
                           std::size_t chi2_bins = 50);

// Two-sample chi-square on 2-D points over a bins x bins grid covering
// [lo, hi]^2, cells pooled in scan order to expected count >= 5. Used for
// comparing (t_min, t_max) tuples of real-case samples.
TestResult chi2_two_sample_pairs(const std::vector<std::array<double, 2>>& a,
                                 const std::vector<std::array<double, 2>>& b,
                                 std::size_t bins, double lo, double hi);

// Fraction of box-domain tuples with an angle within eps of the interval
// ends, where the real-case density vanishes; reported separately because
// the near-edge behavior is not captured by bulk spacing statistics.
double edge_zone_fraction(const SampleBatch& batch, double eps);

}  // namespace circlezeros
