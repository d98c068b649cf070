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
#include "circlezeros/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "circlezeros/parallel.hpp"
#include "circlezeros/roots.hpp"
#include "circlezeros/seeding.hpp"
#include "circlezeros/special.hpp"

namespace circlezeros {

namespace {

// Mean and standard error of a sample.
std::pair<double, double> mean_stderr(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n == 0) return {0.0, 0.0};
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    if (n == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

FractionResult fraction_on_circle(const std::vector<SelfReciprocalPoly>& polys,
                                  double tol, unsigned workers) {
    if (polys.empty()) throw DomainError("fraction_on_circle: empty input");

    std::vector<double> frac(polys.size(), -1.0);  // -1 marks a skipped item
    parallel_for_indexed(polys.size(), workers, [&](std::size_t i) {
        try {
            const ZeroConfiguration zc = circle_classify(find_roots(polys[i]), tol);
            frac[i] = static_cast<double>(zc.on_circle.size()) /
                      static_cast<double>(polys[i].degree);
        } catch (const ConvergenceFailure&) {
            // leave marked; counted below
        } catch (const UnpairedRoot&) {
        }
    });

    std::vector<double> kept;
    kept.reserve(polys.size());
    std::size_t skipped = 0;
    for (double f : frac) {
        if (f < 0.0) ++skipped;
        else kept.push_back(f);
    }
    if (kept.empty()) throw DomainError("every polynomial failed root finding");
    const auto [mean, se] = mean_stderr(kept);
    return {mean, se, kept.size(), skipped};
}

DunnageResult dunnage_real_zero_count(int N, std::size_t samples,
                                      std::uint64_t seed, unsigned workers) {
    if (N < 2) throw DomainError("cosine-sum degree must be at least 2");

    std::vector<double> counts(samples, -1.0);
    parallel_for_indexed(samples, workers, [&](std::size_t i) {
        Rng rng(split_seed(seed, i));
        std::vector<double> c(static_cast<std::size_t>(N));
        do {
            for (auto& v : c) v = rng.gaussian();
            // A vanishing leading coefficient would drop the degree; redrawing
            // is a measure-zero correction.
        } while (std::abs(c.back()) < 1e-8);

        // Lift sum c_n cos(nx) to the palindromic polynomial
        // sum c_n (z^{N+n} + z^{N-n}), made monic by dividing through c_N.
        // Its roots on |z| = 1 are exactly the real zeros of the cosine sum.
        std::vector<double> q(static_cast<std::size_t>(N) + 1);
        q[0] = 0.0;  // there is no constant cosine term
        for (int n = 1; n <= N; ++n)
            q[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n) - 1] / c.back();
        std::vector<cdouble> coeffs(2 * static_cast<std::size_t>(N));
        for (int j = 1; j <= 2 * N; ++j) {
            const int idx = std::abs(N - j);
            coeffs[static_cast<std::size_t>(j) - 1] =
                cdouble(j == 2 * N ? 1.0 : q[static_cast<std::size_t>(idx)], 0.0);
        }
        try {
            const SelfReciprocalPoly p = from_coefficients(coeffs);
            const ZeroConfiguration zc = circle_classify(find_roots(p));
            counts[i] = static_cast<double>(zc.on_circle.size());
        } catch (const ConvergenceFailure&) {
        } catch (const UnpairedRoot&) {
        }
    });

    std::vector<double> kept;
    kept.reserve(samples);
    std::size_t skipped = 0;
    for (double v : counts) {
        if (v < 0.0) ++skipped;
        else kept.push_back(v);
    }
    if (kept.empty()) throw DomainError("every cosine-sum sample failed root finding");
    const auto [mean, se] = mean_stderr(kept);
    return {mean, se, kept.size(), skipped};
}

SpacingSample unfolded_gaps(const SampleBatch& batch) {
    if (batch.box_domain)
        throw DomainError("unfolded_gaps needs circle-domain angle sets");
    SpacingSample out;
    for (const auto& set : batch.angle_sets) {
        const std::size_t n = set.size();
        if (n < 2)
            throw ArityMismatch("angle set too small for gaps", 2, n);
        const double scale = static_cast<double>(n) / kTwoPi;
        for (std::size_t i = 0; i + 1 < n; ++i)
            out.unfolded_gaps.push_back((set[i + 1] - set[i]) * scale);
        out.unfolded_gaps.push_back((set[0] + kTwoPi - set[n - 1]) * scale);
    }
    return out;
}

Histogram histogram_from_gaps(const std::vector<double>& gaps, std::size_t bins) {
    if (bins == 0) throw DomainError("histogram needs at least one bin");
    const double hi = 5.0;
    Histogram h;
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        h.edges[b] = hi * static_cast<double>(b) / static_cast<double>(bins);
    h.counts.assign(bins, 0);
    for (double g : gaps) {
        std::size_t b = static_cast<std::size_t>(g / hi * static_cast<double>(bins));
        if (b >= bins) b = bins - 1;  // overflow gaps collapse into the last bin
        ++h.counts[b];
    }
    h.mass.resize(bins);
    const double total = static_cast<double>(gaps.size());
    for (std::size_t b = 0; b < bins; ++b)
        h.mass[b] = total == 0.0 ? 0.0 : static_cast<double>(h.counts[b]) / total;
    return h;
}

std::pair<SpacingSample, Histogram> spacing_histogram(const SampleBatch& batch,
                                                      std::size_t bins) {
    SpacingSample s = unfolded_gaps(batch);
    Histogram h = histogram_from_gaps(s.unfolded_gaps, bins);
    return {std::move(s), std::move(h)};
}

R2Estimate pair_correlation(const SampleBatch& batch,
                            const std::vector<double>& delta_edges) {
    if (delta_edges.size() < 2)
        throw DomainError("pair_correlation needs at least two bin edges");
    for (std::size_t i = 0; i + 1 < delta_edges.size(); ++i)
        if (!(delta_edges[i] < delta_edges[i + 1]))
            throw DomainError("bin edges must be strictly increasing");
    if (delta_edges.front() < 0.0)
        throw DomainError("separations are nonnegative");

    const std::size_t bins = delta_edges.size() - 1;
    R2Estimate r2;
    r2.counts.assign(bins, 0);
    r2.grid.resize(bins);
    for (std::size_t b = 0; b < bins; ++b)
        r2.grid[b] = 0.5 * (delta_edges[b] + delta_edges[b + 1]);

    // Each ordered pair contributes its circular separation in [0, pi]. For
    // independent uniform angles the separation is uniform on [0, pi], which
    // fixes the normalization below.
    double total_pairs = 0.0;
    for (const auto& set : batch.angle_sets) {
        const std::size_t n = set.size();
        total_pairs += static_cast<double>(n) * static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                double d = std::abs(set[i] - set[j]);
                if (d > kPi) d = kTwoPi - d;
                // lower_bound on edges; values outside the grid are ignored
                auto it = std::upper_bound(delta_edges.begin(), delta_edges.end(), d);
                if (it == delta_edges.begin() || it == delta_edges.end()) continue;
                ++r2.counts[static_cast<std::size_t>(it - delta_edges.begin()) - 1];
            }
        }
    }

    r2.values.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double width = delta_edges[b + 1] - delta_edges[b];
        const double expected_uniform = total_pairs * width / kPi;
        r2.values[b] = expected_uniform == 0.0
                           ? 0.0
                           : static_cast<double>(r2.counts[b]) / expected_uniform;
        if (r2.counts[b] == 0) r2.has_empty_bins = true;
    }
    return r2;
}

SlopeFit repulsion_exponent(const R2Estimate& r2, double lo, double hi) {
    std::vector<double> lx, ly;
    for (std::size_t b = 0; b < r2.grid.size(); ++b) {
        if (r2.grid[b] < lo || r2.grid[b] > hi) continue;
        if (r2.values[b] <= 0.0) continue;
        lx.push_back(std::log(r2.grid[b]));
        ly.push_back(std::log(r2.values[b]));
    }
    const std::size_t n = lx.size();
    if (n < 4)
        throw InsufficientData("need at least 4 positive R2 points in the fit range, have " +
                               std::to_string(n));

    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw InsufficientData("all fit points share one separation");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        rss += r * r;
    }
    const double se =
        n > 2 ? std::sqrt(rss / static_cast<double>(n - 2) / sxx) : 0.0;
    return {slope, se, n};
}

namespace {

// Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-18) break;
    }
    const double q = 2.0 * sum;
    return std::clamp(q, 0.0, 1.0);
}

void require_not_degenerate(const std::vector<double>& xs,
                            const std::vector<double>& ys) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : xs) { lo = std::min(lo, v); hi = std::max(hi, v); }
    for (double v : ys) { lo = std::min(lo, v); hi = std::max(hi, v); }
    if (!(hi > lo))
        throw DegenerateInput("all values identical; no distribution to compare");
}

}  // namespace

TestResult ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || ys.empty())
        throw DomainError("KS test needs two nonempty samples");
    require_not_degenerate(xs, ys);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    const double n1 = static_cast<double>(xs.size());
    const double n2 = static_cast<double>(ys.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xs.size() && j < ys.size()) {
        const double x = xs[i], y = ys[j];
        if (x <= y) ++i;
        if (y <= x) ++j;
        const double f1 = static_cast<double>(i) / n1;
        const double f2 = static_cast<double>(j) / n2;
        d = std::max(d, std::abs(f1 - f2));
    }

    const double ne = n1 * n2 / (n1 + n2);
    const double sq = std::sqrt(ne);
    const double lambda = (sq + 0.12 + 0.11 / sq) * d;
    return {d, kolmogorov_q(lambda), xs.size(), ys.size()};
}

namespace {

// Pool adjacent bins (in the given scan order) until both samples expect at
// least 5 in every pooled bin, then do the two-sample chi-square.
TestResult chi2_from_counts(std::vector<double> c1, std::vector<double> c2) {
    const double n1 = std::accumulate(c1.begin(), c1.end(), 0.0);
    const double n2 = std::accumulate(c2.begin(), c2.end(), 0.0);
    if (n1 == 0.0 || n2 == 0.0)
        throw DomainError("chi-square needs nonempty samples");

    const double f1 = n1 / (n1 + n2);
    const double f2 = n2 / (n1 + n2);
    std::vector<std::pair<double, double>> pooled;
    double a1 = 0.0, a2 = 0.0;
    for (std::size_t b = 0; b < c1.size(); ++b) {
        a1 += c1[b];
        a2 += c2[b];
        const double tot = a1 + a2;
        if (f1 * tot >= 5.0 && f2 * tot >= 5.0) {
            pooled.emplace_back(a1, a2);
            a1 = a2 = 0.0;
        }
    }
    if (a1 + a2 > 0.0) {
        // Leftover tail mass merges into the last pooled bin.
        if (pooled.empty()) throw DegenerateInput("all mass pooled into one underfull bin");
        pooled.back().first += a1;
        pooled.back().second += a2;
    }
    if (pooled.size() < 2)
        throw DegenerateInput("fewer than two populated bins after pooling");

    double stat = 0.0;
    for (const auto& [o1, o2] : pooled) {
        const double tot = o1 + o2;
        const double e1 = f1 * tot;
        const double e2 = f2 * tot;
        stat += (o1 - e1) * (o1 - e1) / e1 + (o2 - e2) * (o2 - e2) / e2;
    }
    const double dof = static_cast<double>(pooled.size() - 1);
    const double p = regularized_gamma_q(0.5 * dof, 0.5 * stat);
    return {stat, p, static_cast<std::size_t>(n1), static_cast<std::size_t>(n2)};
}

}  // namespace

TestResult chi2_two_sample_binned(const std::vector<double>& xs,
                                  const std::vector<double>& ys,
                                  const std::vector<double>& edges) {
    if (xs.empty() || ys.empty())
        throw DomainError("chi-square needs two nonempty samples");
    require_not_degenerate(xs, ys);
    if (edges.size() < 3)
        throw DomainError("chi-square needs at least two bins");

    const std::size_t bins = edges.size() - 1;
    std::vector<double> c1(bins, 0.0), c2(bins, 0.0);
    auto drop_in = [&](const std::vector<double>& v, std::vector<double>& c) {
        for (double x : v) {
            auto it = std::upper_bound(edges.begin(), edges.end(), x);
            std::size_t b;
            if (it == edges.begin()) b = 0;
            else if (it == edges.end()) b = bins - 1;
            else b = static_cast<std::size_t>(it - edges.begin()) - 1;
            ++c[b];
        }
    };
    drop_in(xs, c1);
    drop_in(ys, c2);
    return chi2_from_counts(std::move(c1), std::move(c2));
}

TestResult two_sample_test(const std::vector<double>& xs,
                           const std::vector<double>& ys, TestKind kind,
                           std::size_t chi2_bins) {
    if (kind == TestKind::KS) return ks_two_sample(xs, ys);

    if (xs.empty() || ys.empty())
        throw DomainError("chi-square needs two nonempty samples");
    require_not_degenerate(xs, ys);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : xs) { lo = std::min(lo, v); hi = std::max(hi, v); }
    for (double v : ys) { lo = std::min(lo, v); hi = std::max(hi, v); }
    std::vector<double> edges(chi2_bins + 1);
    for (std::size_t b = 0; b <= chi2_bins; ++b)
        edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(chi2_bins);
    return chi2_two_sample_binned(xs, ys, edges);
}

TestResult chi2_two_sample_pairs(const std::vector<std::array<double, 2>>& a,
                                 const std::vector<std::array<double, 2>>& b,
                                 std::size_t bins, double lo, double hi) {
    if (a.empty() || b.empty())
        throw DomainError("chi-square needs two nonempty samples");
    if (!(hi > lo)) throw DomainError("invalid bin range");
    if (bins == 0) throw DomainError("need at least one bin per axis");

    const double width = (hi - lo) / static_cast<double>(bins);
    auto cell = [&](const std::array<double, 2>& p) {
        auto clampbin = [&](double v) {
            auto k = static_cast<long>((v - lo) / width);
            if (k < 0) k = 0;
            if (k >= static_cast<long>(bins)) k = static_cast<long>(bins) - 1;
            return static_cast<std::size_t>(k);
        };
        return clampbin(p[0]) * bins + clampbin(p[1]);
    };
    std::vector<double> c1(bins * bins, 0.0), c2(bins * bins, 0.0);
    for (const auto& p : a) ++c1[cell(p)];
    for (const auto& p : b) ++c2[cell(p)];
    return chi2_from_counts(std::move(c1), std::move(c2));
}

double edge_zone_fraction(const SampleBatch& batch, double eps) {
    if (!batch.box_domain)
        throw DomainError("edge_zone_fraction applies to box-domain batches");
    if (batch.angle_sets.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& set : batch.angle_sets) {
        bool edge = false;
        for (double t : set)
            if (t < eps || t > kPi - eps) { edge = true; break; }
        if (edge) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(batch.angle_sets.size());
}

}  // namespace circlezeros
