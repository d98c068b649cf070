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
#include "circlezeros/samplers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "circlezeros/parallel.hpp"
#include "circlezeros/roots.hpp"
#include "circlezeros/seeding.hpp"

namespace circlezeros {

const char* model_name(Model m) {
    switch (m) {
        case Model::UNIFORM_DISK_COMPLEX: return "UNIFORM_DISK_COMPLEX";
        case Model::UNIFORM_DISK_REAL: return "UNIFORM_DISK_REAL";
        case Model::GAUSSIAN_SR: return "GAUSSIAN_SR";
        case Model::MATRIX_COE: return "MATRIX_COE";
        case Model::MATRIX_CUE: return "MATRIX_CUE";
        case Model::MCMC: return "MCMC";
    }
    return "?";
}

namespace {

// One uniform-model coefficient draw, returned as a validated polynomial.
SelfReciprocalPoly draw_uniform_poly(Rng& rng, Model model, int N) {
    std::vector<cdouble> coeffs(static_cast<std::size_t>(N));
    if (model == Model::UNIFORM_DISK_COMPLEX) {
        if (N % 2 == 1) {
            const int K = (N - 1) / 2;
            for (int n = 1; n <= K; ++n)
                coeffs[static_cast<std::size_t>(n) - 1] =
                    rng.uniform_disk(binomial(N, n));
            const double phi = kTwoPi * rng.uniform01();
            const cdouble aN(std::cos(phi), std::sin(phi));
            coeffs.back() = aN;
            for (int n = 1; n <= K; ++n)
                coeffs[static_cast<std::size_t>(N - n) - 1] =
                    aN * std::conj(coeffs[static_cast<std::size_t>(n) - 1]);
        } else {
            // Even degree: the phase of a_N is slaved to the middle
            // coefficient through a_{N/2} = a_N conj(a_{N/2}).
            const int K = N / 2;
            cdouble mid;
            do {
                mid = rng.uniform_disk(binomial(N, K));
            } while (mid == cdouble(0.0, 0.0));
            for (int n = 1; n < K; ++n)
                coeffs[static_cast<std::size_t>(n) - 1] =
                    rng.uniform_disk(binomial(N, n));
            coeffs[static_cast<std::size_t>(K) - 1] = mid;
            const cdouble aN = mid / std::conj(mid);
            coeffs.back() = aN;
            for (int n = 1; n < K; ++n)
                coeffs[static_cast<std::size_t>(N - n) - 1] =
                    aN * std::conj(coeffs[static_cast<std::size_t>(n) - 1]);
        }
    } else {
        // Real palindromic model: a_N = 1 and a_n = a_{N-n}, free block
        // a_1..a_{floor(N/2)} uniform in symmetric intervals.
        const int K = N / 2;
        for (int n = 1; n <= K; ++n) {
            const double b = binomial(N, n);
            coeffs[static_cast<std::size_t>(n) - 1] = cdouble(rng.uniform(-b, b), 0.0);
        }
        coeffs.back() = cdouble(1.0, 0.0);
        for (int n = 1; n < N - n; ++n)
            coeffs[static_cast<std::size_t>(N - n) - 1] =
                coeffs[static_cast<std::size_t>(n) - 1];
    }
    return from_coefficients(coeffs);
}

}  // namespace

SampleBatch sample_cn_rejection(const EnsembleSpec& spec, std::size_t count,
                                std::size_t max_attempts, unsigned workers) {
    if (spec.model != Model::UNIFORM_DISK_COMPLEX &&
        spec.model != Model::UNIFORM_DISK_REAL) {
        throw DomainError("sample_cn_rejection needs a uniform-disk model");
    }
    if (spec.N < 1) throw DomainError("degree must be at least 1");
    if (max_attempts == 0) throw DomainError("max_attempts must be positive");

    const bool real_model = spec.model == Model::UNIFORM_DISK_REAL;
    const int N = spec.N;
    const int M = N / 2;  // conjugate pairs in the real model
    const double class_tol = spec.tolerance > 0.0 ? spec.tolerance : 1e-8 * N;

    std::vector<std::optional<std::vector<double>>> results(count);
    std::vector<std::uint64_t> attempts(count, 0);
    std::vector<std::uint64_t> seeds(count, 0);

    parallel_for_indexed(count, workers, [&](std::size_t i) {
        const std::uint64_t s = split_seed(spec.seed, i);
        seeds[i] = s;
        Rng rng(s);
        for (std::size_t att = 0; att < max_attempts; ++att) {
            ++attempts[i];
            SelfReciprocalPoly p;
            ZeroConfiguration zc;
            try {
                p = draw_uniform_poly(rng, spec.model, N);
                zc = circle_classify(find_roots(p), class_tol);
            } catch (const ConvergenceFailure&) {
                continue;  // treat a root-finder failure as a rejected draw
            } catch (const UnpairedRoot&) {
                continue;
            }
            if (!zc.off_pairs.empty()) continue;

            if (!real_model) {
                results[i] = zc.on_circle;
                return;
            }
            // Real model: reduce the N sorted circle angles to the M pair
            // angles in (0, pi). Roots at +-1 (angles 0 or pi) make the pair
            // extraction ambiguous; those draws live on a measure-zero set
            // and are simply rejected.
            const double guard = 10.0 * class_tol;
            std::vector<double> t;
            for (double d : zc.on_circle)
                if (d > guard && d < kPi - guard) t.push_back(d);
            if (static_cast<int>(t.size()) != M) continue;
            results[i] = std::move(t);
            return;
        }
    });

    SampleBatch batch;
    batch.box_domain = real_model;
    batch.seed_chain = seeds;
    std::size_t failed_at = count;
    for (std::size_t i = 0; i < count; ++i) {
        if (!results[i]) {
            failed_at = i;
            break;
        }
    }
    const std::size_t keep = failed_at;
    batch.angle_sets.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) batch.angle_sets.push_back(*results[i]);
    batch.accepted = keep;
    // Attempts aggregate over every item that ran, in index order, so the
    // counter is reproducible even when a later item failed.
    for (std::size_t i = 0; i < count; ++i) batch.attempted += attempts[i];

    if (failed_at != count) {
        batch.seed_chain.resize(keep);
        throw AttemptBudgetExhausted(
            "item " + std::to_string(failed_at) + " used all " +
                std::to_string(max_attempts) + " attempts",
            std::move(batch));
    }
    return batch;
}

std::vector<SelfReciprocalPoly> sample_gaussian_sr(const EnsembleSpec& spec,
                                                   std::size_t count,
                                                   unsigned workers) {
    if (spec.model != Model::GAUSSIAN_SR)
        throw DomainError("sample_gaussian_sr needs model GAUSSIAN_SR");
    if (spec.epsilon <= 0.0)
        throw DomainError("GAUSSIAN_SR requires epsilon > 0");
    const int N = spec.N;
    if (N < 1) throw DomainError("degree must be at least 1");
    const double sigma = spec.epsilon / std::sqrt(static_cast<double>(N));

    std::vector<SelfReciprocalPoly> out(count);
    parallel_for_indexed(count, workers, [&](std::size_t i) {
        Rng rng(split_seed(spec.seed, i));
        std::vector<cdouble> coeffs(static_cast<std::size_t>(N));
        for (int j = 1; 2 * j < N; ++j)
            coeffs[static_cast<std::size_t>(j) - 1] = rng.complex_gaussian(sigma);
        if (N % 2 == 0)
            coeffs[static_cast<std::size_t>(N / 2) - 1] =
                cdouble(sigma * rng.gaussian(), 0.0);
        coeffs.back() = cdouble(1.0, 0.0);
        for (int j = 1; 2 * j < N; ++j)
            coeffs[static_cast<std::size_t>(N - j) - 1] =
                std::conj(coeffs[static_cast<std::size_t>(j) - 1]);
        out[i] = from_coefficients(coeffs);
    });
    return out;
}

namespace {

using CMat = Eigen::MatrixXcd;

// Haar-distributed unitary: QR of a Ginibre matrix, then absorb the phases of
// diag(R) into Q. Without the phase fix the distribution is biased toward the
// QR algorithm's sign conventions.
CMat haar_unitary(Rng& rng, int n) {
    CMat g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = rng.complex_gaussian(1.0);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    const CMat& qrmat = qr.matrixQR();
    for (int k = 0; k < n; ++k) {
        const cdouble d = qrmat(k, k);
        const double ad = std::abs(d);
        const cdouble phase = ad == 0.0 ? cdouble(1.0, 0.0) : d / ad;
        q.col(k) *= phase;
    }
    return q;
}

std::vector<double> sorted_eigenangles(const CMat& u) {
    Eigen::ComplexSchur<CMat> schur(u, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw EigensolveFailure("Schur iteration failed on unitary matrix");
    const int n = static_cast<int>(u.rows());
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const cdouble ev = schur.matrixT()(k, k);
        const double mod = std::abs(ev);
        if (std::abs(mod - 1.0) > 1e-6)
            throw EigensolveFailure("eigenvalue drifted off the unit circle: |ev| = " +
                                    std::to_string(mod));
        double a = std::arg(ev);
        if (a < 0.0) a += kTwoPi;
        if (a >= kTwoPi) a = 0.0;
        angles[static_cast<std::size_t>(k)] = a;
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

}  // namespace

SampleBatch sample_matrix_ensemble_angles(const EnsembleSpec& spec,
                                          std::size_t count, unsigned workers) {
    if (spec.model != Model::MATRIX_COE && spec.model != Model::MATRIX_CUE)
        throw DomainError("sample_matrix_ensemble_angles needs a matrix model");
    if (spec.N < 1) throw DomainError("matrix dimension must be at least 1");
    const bool coe = spec.model == Model::MATRIX_COE;
    const int N = spec.N;

    SampleBatch batch;
    batch.angle_sets.resize(count);
    batch.seed_chain.resize(count);
    parallel_for_indexed(count, workers, [&](std::size_t i) {
        const std::uint64_t s = split_seed(spec.seed, i);
        batch.seed_chain[i] = s;
        Rng rng(s);
        const CMat u = haar_unitary(rng, N);
        if (coe) {
            const CMat sym = u.transpose() * u;
            batch.angle_sets[i] = sorted_eigenangles(sym);
        } else {
            batch.angle_sets[i] = sorted_eigenangles(u);
        }
    });
    batch.accepted = count;
    batch.attempted = count;
    return batch;
}

SampleBatch mcmc_sample(const DensityKind& kind, std::size_t count,
                        std::size_t burn_in, std::size_t thin,
                        double proposal_scale, std::uint64_t seed) {
    if (proposal_scale <= 0.0)
        throw DomainError("proposal_scale must be positive");
    if (thin == 0) thin = 1;
    const std::size_t dim = static_cast<std::size_t>(kind.arity);
    const bool box = !kind.on_full_circle();
    const double hi = box ? kPi : kTwoPi;

    Rng rng(split_seed(seed, 0));

    // Start from a finite-density point; coincidences have probability zero
    // but a defensive retry costs nothing.
    std::vector<double> x(dim);
    double lp = -std::numeric_limits<double>::infinity();
    for (int tries = 0; tries < 100 && !std::isfinite(lp); ++tries) {
        for (auto& v : x) v = rng.uniform(box ? 1e-3 : 0.0, box ? hi - 1e-3 : hi);
        lp = log_density(kind, x);
    }
    if (!std::isfinite(lp))
        throw DomainError("could not find a finite-density starting point");

    double scale = proposal_scale;
    const std::size_t total = burn_in + count * thin;
    std::size_t accepted_moves = 0;
    std::size_t window_accepts = 0;
    std::size_t window_len = 0;

    SampleBatch batch;
    batch.box_domain = box;
    batch.seed_chain.push_back(split_seed(seed, 0));
    batch.angle_sets.reserve(count);

    std::vector<double> y(dim);
    for (std::size_t step = 0; step < total; ++step) {
        for (std::size_t k = 0; k < dim; ++k) {
            double v = x[k] + scale * rng.gaussian();
            if (box) {
                // Reflect at 0 and pi; the proposal stays symmetric because
                // reflection is measure-preserving.
                while (v < 0.0 || v > kPi) {
                    if (v < 0.0) v = -v;
                    if (v > kPi) v = kTwoPi - v;
                }
            } else {
                v -= kTwoPi * std::floor(v / kTwoPi);
            }
            y[k] = v;
        }
        const double lq = log_density(kind, y);
        const bool accept = std::log(rng.uniform01_pos()) < lq - lp;
        if (accept) {
            x.swap(y);
            lp = lq;
            ++accepted_moves;
            ++window_accepts;
        }
        ++window_len;

        // Adapt only while burning in; the recorded chain sees a fixed scale.
        if (step < burn_in && window_len == 200) {
            const double rate = static_cast<double>(window_accepts) / 200.0;
            if (rate < 0.2) scale *= 0.7;
            else if (rate > 0.5) scale *= 1.3;
            scale = std::clamp(scale, 1e-4, kPi);
            window_accepts = 0;
            window_len = 0;
        }

        if (step >= burn_in && (step - burn_in + 1) % thin == 0) {
            std::vector<double> rec = x;
            std::sort(rec.begin(), rec.end());
            batch.angle_sets.push_back(std::move(rec));
            if (batch.angle_sets.size() == count) break;
        }
    }

    batch.accepted = batch.angle_sets.size();
    batch.attempted = total;
    batch.mcmc_acceptance = static_cast<double>(accepted_moves) /
                            static_cast<double>(total);
    return batch;
}

SampleBatch mcmc_sample_default(const DensityKind& kind, std::size_t count,
                                std::uint64_t seed) {
    const std::size_t thin = 10 * static_cast<std::size_t>(kind.arity);
    const double scale = 1.0 / std::sqrt(static_cast<double>(kind.arity));
    return mcmc_sample(kind, count, 10000, thin, scale, seed);
}

}  // namespace circlezeros
