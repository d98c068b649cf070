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

#include <vector>

#include "circlezeros/poly.hpp"

namespace circlezeros {

struct RootFindReport {
    std::vector<cdouble> raw_roots;  // exactly degree entries
    double residual_max = 0.0;       // max |p(root)| over the roots
    int iterations = 0;              // refinement sweeps used
};

class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& msg, RootFindReport partial)
        : Error(msg), partial(std::move(partial)) {}
    RootFindReport partial;
};

class UnpairedRoot : public Error {
public:
    UnpairedRoot(const std::string& msg, cdouble root)
        : Error(msg), root(root) {}
    cdouble root;
};

// All N roots of a self-reciprocal polynomial: balanced companion-matrix
// eigenvalues refined by simultaneous Aberth-Ehrlich iteration down to
// backward error a few ulps of the evaluation bound; a root stuck above 64
// ulps raises ConvergenceFailure. The set is then cross-checked by
// re-expanding the product of the roots; a max-norm coefficient mismatch
// above 1e-7 * N relative, beyond what the expansion's own rounding can
// produce, also raises ConvergenceFailure.
RootFindReport find_roots(const SelfReciprocalPoly& p);

// Split roots into on-circle angles (| |z| - 1 | < tol) and mirrored pairs.
// Off-circle roots are matched to their reflected partners by nearest match
// within 10 * tol; a root without a partner raises UnpairedRoot. tol < 0
// selects the default 1e-8 * N.
ZeroConfiguration circle_classify(const RootFindReport& report, double tol = -1.0);

}  // namespace circlezeros
