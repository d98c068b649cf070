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

#include <cstdint>
#include <vector>

#include "circlezeros/measures.hpp"
#include "circlezeros/poly.hpp"

namespace circlezeros {

enum class Model {
    UNIFORM_DISK_COMPLEX,  // a_n uniform in disks of radius binom(N, n)
    UNIFORM_DISK_REAL,     // a_n uniform in [-binom(N, n), binom(N, n)], palindromic
    GAUSSIAN_SR,           // complex-normal coefficients, sigma = epsilon / sqrt(N)
    MATRIX_COE,            // eigenangles of U^T U, U Haar unitary
    MATRIX_CUE,            // eigenangles of a Haar unitary
    MCMC,                  // Metropolis walk targeting a DensityKind
};

const char* model_name(Model m);

struct EnsembleSpec {
    Model model = Model::MATRIX_CUE;
    int N = 1;                // polynomial degree or matrix dimension
    double epsilon = 0.0;     // GAUSSIAN_SR only
    std::uint64_t seed = 0;
    double tolerance = -1.0;  // on-circle classification tol; < 0 selects default
    DensityKind mcmc_target = DensityKind::coe(1);  // MCMC only
};

// A batch of sorted angle tuples plus the bookkeeping needed to audit and
// reproduce it. For circle-valued samples each tuple holds N angles in
// [0, 2pi); for the real-coefficient rejection model each tuple holds the M
// conjugate-pair angles in (0, pi) and box_domain is set.
struct SampleBatch {
    std::vector<std::vector<double>> angle_sets;
    std::uint64_t accepted = 0;   // always == angle_sets.size()
    std::uint64_t attempted = 0;  // draws tried (rejection) or MH proposals (MCMC)
    std::vector<std::uint64_t> seed_chain;  // per-item derived seeds
    bool box_domain = false;
    double mcmc_acceptance = -1.0;  // MH acceptance rate; -1 when not MCMC
};

class AttemptBudgetExhausted : public Error {
public:
    AttemptBudgetExhausted(const std::string& msg, SampleBatch partial)
        : Error(msg), partial(std::move(partial)) {}
    SampleBatch partial;
};

class EigensolveFailure : public Error {
public:
    explicit EigensolveFailure(const std::string& msg) : Error(msg) {}
};

// Exact rejection sampling of the all-zeros-on-circle set: draw coefficients
// from the uniform model, keep the polynomial iff classification finds no
// off-circle pair. max_attempts is a per-item budget; exhausting it raises
// AttemptBudgetExhausted carrying the completed prefix of the batch.
// Deterministic for fixed spec at any worker count.
SampleBatch sample_cn_rejection(const EnsembleSpec& spec, std::size_t count,
                                std::size_t max_attempts, unsigned workers = 1);

// Self-reciprocal polynomials with complex-normal coefficients: a_N = 1,
// a_j ~ CN(0, (epsilon/sqrt(N))^2) for j < N/2, the even-N middle coefficient
// real normal with the same variance (the symmetry forces it real when
// a_N = 1), upper half completed by conjugation.
std::vector<SelfReciprocalPoly> sample_gaussian_sr(const EnsembleSpec& spec,
                                                   std::size_t count,
                                                   unsigned workers = 1);

// Eigenangle batches of Haar-distributed circular ensembles. CUE: QR of a
// complex Ginibre matrix with the R-diagonal phase correction (plain QR is
// not Haar). COE: eigenangles of U^T U for U Haar.
SampleBatch sample_matrix_ensemble_angles(const EnsembleSpec& spec,
                                          std::size_t count,
                                          unsigned workers = 1);

// Metropolis random walk targeting exp(log_density(kind, .)), on the torus
// [0, 2pi)^N for circular kinds and on (0, pi)^M with reflecting boundaries
// for the real-case kinds. proposal_scale is adapted toward 20-50% acceptance
// during burn-in only, then frozen, so the recorded chain is in equilibrium.
// Single chain; recorded states are thinned and sorted.
SampleBatch mcmc_sample(const DensityKind& kind, std::size_t count,
                        std::size_t burn_in, std::size_t thin,
                        double proposal_scale, std::uint64_t seed);

// The walk with standard defaults: burn_in 10^4, thin 10 * arity, initial
// proposal scale 1/sqrt(arity).
SampleBatch mcmc_sample_default(const DensityKind& kind, std::size_t count,
                                std::uint64_t seed);

}  // namespace circlezeros
