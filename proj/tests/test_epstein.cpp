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

// Quadratic form zeta functions: reduction, the truncated lattice sum, the
// completed function, the rescaled critical-line evaluator, and the zero
// scan. Frozen reference values come from an independent high-precision
// implementation of the Fourier expansion of the underlying Eisenstein
// series (40-digit working precision); see tests/oracles/gen_special_refs.py.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "circlezeros/epstein.hpp"
#include "circlezeros/poly.hpp"
#include "circlezeros/seeding.hpp"
#include "circlezeros/special.hpp"
#include "helpers.hpp"

using namespace circlezeros;
using testutil::rel_err;

namespace {

// A well-conditioned random positive definite form: least eigenvalue
// bounded away from zero so direct-sum tails stay meaningful.
QuadraticForm random_form(Rng& rng) {
  const double a = rng.uniform(0.6, 3.0);
  const double c = rng.uniform(0.6, 3.0);
  const double b = rng.uniform(-1.0, 1.0) * 0.7 * 2.0 * std::sqrt(a * c);
  return QuadraticForm(a, b, c);
}

// Image of q under the substitution (m, n) -> (alpha m + beta n,
// gamma m + delta n) with alpha delta - beta gamma = 1. The new form
// represents the same values, so its zeta function is unchanged.
QuadraticForm unimodular_image(const QuadraticForm& q, int alpha, int beta,
                               int gamma, int delta) {
  REQUIRE(alpha * delta - beta * gamma == 1);
  const double a2 = q.eval(alpha, gamma);
  const double c2 = q.eval(beta, delta);
  const double b2 = 2.0 * q.a * alpha * beta +
                    q.b * (alpha * delta + beta * gamma) +
                    2.0 * q.c * gamma * delta;
  return QuadraticForm(a2, b2, c2);
}

}  // namespace

TEST_CASE("quadratic form constructor rejects non positive definite input") {
  CHECK_THROWS_AS(QuadraticForm(-1.0, 0.0, 1.0), NotPositiveDefinite);
  CHECK_THROWS_AS(QuadraticForm(1.0, 3.0, 1.0), NotPositiveDefinite);
  CHECK_THROWS_AS(QuadraticForm(0.0, 0.0, 1.0), NotPositiveDefinite);
  CHECK_NOTHROW(QuadraticForm(2.0, -2.0, 1.0));
}

TEST_CASE("reduce_form maps textbook forms to known points") {
  {
    const ReducedForm r = reduce_form(QuadraticForm(1, 0, 1));
    CHECK(r.point.x == 0.0);
    CHECK(r.point.y == 1.0);
    CHECK(r.point.in_fundamental_domain);
    CHECK(r.scale == doctest::Approx(1.0).epsilon(1e-14));
  }
  {
    const ReducedForm r = reduce_form(QuadraticForm(1, 1, 1));
    CHECK(r.point.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.point.y == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
    CHECK(r.point.in_fundamental_domain);
    CHECK(r.scale == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
  }
  {
    const ReducedForm r = reduce_form(QuadraticForm(2, 2, 3));
    CHECK(r.point.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.point.y == doctest::Approx(std::sqrt(5.0) / 2).epsilon(1e-14));
    CHECK(r.scale == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  }
  {
    const ReducedForm r = reduce_form(QuadraticForm(1, -1, 3));
    CHECK(r.point.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.point.y == doctest::Approx(std::sqrt(11.0) / 2).epsilon(1e-14));
    CHECK(r.scale == doctest::Approx(std::sqrt(11.0) / 2).epsilon(1e-14));
  }
  {
    // Far from reduced: many translation steps collapse it to the corner.
    const ReducedForm r = reduce_form(QuadraticForm(1, 100, 2501));
    CHECK(r.point.x == 0.0);
    CHECK(r.point.y == 1.0);
    CHECK(r.scale == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("reduction lands in the fundamental domain with invariant scale") {
  Rng rng(split_seed(404, 0));
  for (int trial = 0; trial < 50; ++trial) {
    const QuadraticForm q = random_form(rng);
    const ReducedForm r = reduce_form(q);
    CHECK(r.point.in_fundamental_domain);
    CHECK(r.point.y > 0.0);
    CHECK(r.point.x > -0.5 - 1e-12);
    CHECK(r.point.x <= 0.5 + 1e-12);
    CHECK(r.point.x * r.point.x + r.point.y * r.point.y >= 1.0 - 1e-12);
    const double half_root_disc = 0.5 * std::sqrt(-q.discriminant());
    CHECK(rel_err(r.scale, half_root_disc) < 1e-12);
  }
}

TEST_CASE("reduced_equivalent preserves the discriminant and the point") {
  Rng rng(split_seed(404, 1));
  for (int trial = 0; trial < 30; ++trial) {
    const QuadraticForm q = random_form(rng);
    const QuadraticForm qr = reduced_equivalent(q);
    CHECK(rel_err(qr.discriminant(), q.discriminant()) < 1e-10);
    const ReducedForm r1 = reduce_form(q);
    const ReducedForm r2 = reduce_form(qr);
    CHECK(std::abs(r1.point.x - r2.point.x) < 1e-9);
    CHECK(rel_err(r1.point.y, r2.point.y) < 1e-9);
  }
  // A form that is already reduced comes back unchanged.
  const QuadraticForm id = reduced_equivalent(QuadraticForm(1, 0, 1));
  CHECK(id.a == 1.0);
  CHECK(id.b == 0.0);
  CHECK(id.c == 1.0);
}

TEST_CASE("unimodular substitutions leave the reduced point unchanged") {
  Rng rng(split_seed(404, 2));
  const int mats[4][4] = {
      {1, 1, 0, 1}, {0, -1, 1, 0}, {2, 1, 1, 1}, {1, -2, 0, 1}};
  for (int trial = 0; trial < 10; ++trial) {
    const QuadraticForm q = random_form(rng);
    const ReducedForm base = reduce_form(q);
    for (const auto& m : mats) {
      const QuadraticForm qt = unimodular_image(q, m[0], m[1], m[2], m[3]);
      const ReducedForm r = reduce_form(qt);
      CHECK(std::abs(r.point.x - base.point.x) < 1e-10);
      CHECK(rel_err(r.point.y, base.point.y) < 1e-10);
      CHECK(rel_err(r.scale, base.scale) < 1e-10);
    }
  }
}

TEST_CASE("direct lattice sum rejects out of domain arguments") {
  const QuadraticForm q(1, 0, 1);
  CHECK_THROWS_AS(epstein_direct(q, cdouble(1.0, 0.0), 10), DomainError);
  CHECK_THROWS_AS(epstein_direct(q, cdouble(0.3, 2.0), 10), DomainError);
  CHECK_THROWS_AS(epstein_direct(q, cdouble(2.0, 0.0), 0), DomainError);
}

TEST_CASE("direct sum counts every lattice point in the box") {
  const DirectSumResult r = epstein_direct(QuadraticForm(1, 0, 1), 2.0, 3);
  CHECK(r.terms == 48);  // (2*3+1)^2 - 1
}

TEST_CASE("direct sum at s=2 matches the independent factorization") {
  // For m^2 + n^2 the zeta function factors into 4 zeta(2) G with G the
  // alternating sum over odd squares; both factors are summed right here,
  // with nothing shared with the lattice code.
  double catalan = 0.0;
  double sign = 1.0;
  for (long j = 0; j < 200000; ++j) {
    const double d = 2.0 * j + 1.0;
    catalan += sign / (d * d);
    sign = -sign;
  }
  catalan += sign / (2.0 * (2.0 * 200000 + 1.0) * (2.0 * 200000 + 1.0));
  const double exact = 4.0 * (kPi * kPi / 6.0) * catalan;

  const DirectSumResult r = epstein_direct(QuadraticForm(1, 0, 1), 2.0, 800);
  CHECK(r.tail_bound < 5e-5);
  CHECK(std::abs(r.value.real() - exact) <= r.tail_bound + 1e-12);
  CHECK(std::abs(r.value.imag()) < 1e-13 * std::abs(r.value.real()));
}

TEST_CASE("direct sum truncation error is within its reported bound") {
  const QuadraticForm q(1, 0, 1);
  const cdouble s(1.6, 0.8);
  const DirectSumResult coarse = epstein_direct(q, s, 40);
  const DirectSumResult fine = epstein_direct(q, s, 400);
  CHECK(std::abs(coarse.value - fine.value) <= coarse.tail_bound);
  CHECK(fine.tail_bound < coarse.tail_bound);
}

TEST_CASE("direct sum symmetry under coefficient swap and conjugation") {
  const cdouble s(2.5, 1.2);
  const DirectSumResult r1 = epstein_direct(QuadraticForm(2, 1, 3), s, 60);
  const DirectSumResult r2 = epstein_direct(QuadraticForm(3, 1, 2), s, 60);
  CHECK(rel_err(r1.value, r2.value) < 1e-13);
  const DirectSumResult rc =
      epstein_direct(QuadraticForm(2, 1, 3), std::conj(s), 60);
  CHECK(rel_err(rc.value, std::conj(r1.value)) < 1e-13);
}

TEST_CASE("direct sum scales covariantly under q -> lambda q") {
  const double lam = 1.7;
  for (const cdouble s : {cdouble(2.0, 0.0), cdouble(2.5, 1.0)}) {
    const DirectSumResult base = epstein_direct(QuadraticForm(1, 0, 1), s, 60);
    const DirectSumResult scaled =
        epstein_direct(QuadraticForm(lam, 0, lam), s, 60);
    const cdouble expect = std::pow(lam, -s) * base.value;
    CHECK(rel_err(scaled.value, expect) < 1e-12);
  }
}

TEST_CASE("completed function matches frozen reference values") {
  const QuadraticForm qi(1, 0, 1);
  const QuadraticForm q223(2, 2, 3);
  const QuadraticForm q1m13(1, -1, 3);

  CHECK(rel_err(epstein_completed(qi, cdouble(2.0, 0.0)),
                cdouble(0.6106437294514793433697, 0.0)) < 1e-12);
  CHECK(rel_err(epstein_completed(qi, cdouble(0.7, 3.0)),
                cdouble(-0.03918533801678524937257,
                        -0.01059584770705596262096)) < 1e-10);
  CHECK(rel_err(epstein_completed(qi, cdouble(0.5, 0.0)),
                cdouble(-3.900264920001955883005, 0.0)) < 1e-10);
  CHECK(rel_err(epstein_completed(q223, cdouble(2.0, 0.0)),
                cdouble(0.6123302905697896643793, 0.0)) < 1e-12);
  CHECK(rel_err(epstein_completed(q223, cdouble(0.4, 2.0)),
                cdouble(-0.1503048128252501471142,
                        0.0205312138195961285266)) < 1e-10);
  CHECK(rel_err(epstein_completed(q1m13, cdouble(1.3, -0.7)),
                cdouble(0.1935881541936314290579,
                        0.8574312476909429219805)) < 1e-10);
}

TEST_CASE("completed function agrees with the gamma-weighted direct sum") {
  Rng rng(split_seed(404, 3));
  const cdouble s(2.0, 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const QuadraticForm q = random_form(rng);
    const DirectSumResult d = epstein_direct(q, s, 300);
    const double scale = 0.5 * std::sqrt(-q.discriminant());
    // Gamma(2) = 1, so the prefactor is just (scale/pi)^2.
    const double pref = (scale / kPi) * (scale / kPi);
    const cdouble lam = epstein_completed(q, s);
    CHECK(d.tail_bound < 0.01);
    CHECK(std::abs(lam - pref * d.value) <= pref * d.tail_bound * 1.01 + 1e-12);
  }
}

TEST_CASE("functional equation holds exactly and conjugation commutes") {
  Rng rng(split_seed(404, 4));
  const std::vector<QuadraticForm> forms = {
      QuadraticForm(1, 0, 1), QuadraticForm(2, 2, 3), QuadraticForm(1, -1, 3),
      QuadraticForm(3, 1, 5)};
  for (int trial = 0; trial < 20; ++trial) {
    const cdouble s(rng.uniform(0.02, 0.98), rng.uniform(-30.0, 30.0));
    for (const QuadraticForm& q : forms) {
      const cdouble a = epstein_completed(q, s);
      const cdouble b = epstein_completed(q, 1.0 - s);
      CHECK(a == b);  // same canonical representative, bit for bit
    }
  }
  // Conjugation symmetry where the representation keeps full significance.
  for (const QuadraticForm& q : forms) {
    const cdouble s(0.3, 2.2);
    const cdouble a = epstein_completed(q, s);
    const cdouble b = epstein_completed(q, std::conj(s));
    CHECK(rel_err(b, std::conj(a)) < 1e-12);
  }
}

TEST_CASE("completed function depends only on the reduced point") {
  // (2,0,2) is a rescaling of (1,0,1) and (1,2,2) is equivalent to it; all
  // three reduce to exactly the corner point, so the completed values match
  // bit for bit.
  for (const cdouble s : {cdouble(2.0, 0.0), cdouble(0.35, 4.0)}) {
    const cdouble base = epstein_completed(QuadraticForm(1, 0, 1), s);
    CHECK(epstein_completed(QuadraticForm(2, 0, 2), s) == base);
    CHECK(epstein_completed(QuadraticForm(1, 2, 2), s) == base);
    CHECK(epstein_completed(QuadraticForm(1, 100, 2501), s) == base);
  }
}

TEST_CASE("completed function refuses points next to the poles") {
  const QuadraticForm q(1, 0, 1);
  CHECK_THROWS_AS(epstein_completed(q, cdouble(0.0, 0.0)), PoleProximity);
  CHECK_THROWS_AS(epstein_completed(q, cdouble(1.0, 0.0)), PoleProximity);
  CHECK_THROWS_AS(epstein_completed(q, cdouble(1e-8, 0.0)), PoleProximity);
  CHECK_THROWS_AS(epstein_completed(q, cdouble(1.0, 1e-9)), PoleProximity);
  CHECK_NOTHROW(epstein_completed(q, cdouble(1e-5, 0.0)));
}

TEST_CASE("hardy Z matches frozen reference values") {
  const QuadraticForm qi(1, 0, 1);
  CHECK(rel_err(hardy_z(qi, 5.0), -4.569225903213643056712) < 1e-9);
  // The value at the first zeta zero ordinate is nearly zero; compare
  // absolutely there.
  CHECK(std::abs(hardy_z(qi, 14.134725) - 1.417188220990627737775e-6) < 1e-9);
  CHECK(rel_err(hardy_z(qi, 25.0), 0.1577440736963793172531) < 1e-9);
  CHECK(rel_err(hardy_z(qi, 60.0), -5.865238896116008152282) < 1e-9);
  CHECK(rel_err(hardy_z(qi, 99.5), 21.63030185458564336185) < 1e-9);
  CHECK(rel_err(hardy_z(QuadraticForm(2, 2, 3), 10.0),
                -5.877210332640021414769) < 1e-9);
}

TEST_CASE("hardy Z is even in t and consistent with the completed function") {
  const QuadraticForm qi(1, 0, 1);
  CHECK(hardy_z(qi, -5.0) == hardy_z(qi, 5.0));

  // Two fully independent internal routes: the incomplete-gamma split and
  // the Fourier-Bessel expansion must agree where both keep significance.
  for (const double t : {1.0, 3.0, 6.5}) {
    const cdouble lam = epstein_completed(qi, cdouble(0.5, t));
    CHECK(std::abs(lam.imag()) < 1e-10 * std::abs(lam) + 1e-16);
    const double via_split = std::exp(0.5 * kPi * t) * lam.real();
    CHECK(rel_err(hardy_z(qi, t), via_split) < 1e-9);
  }
  const QuadraticForm q223(2, 2, 3);
  for (const double t : {2.0, 5.0}) {
    const cdouble lam = epstein_completed(q223, cdouble(0.5, t));
    const double via_split = std::exp(0.5 * kPi * t) * lam.real();
    CHECK(rel_err(hardy_z(q223, t), via_split) < 1e-9);
  }

  // At t = 0 the evaluator works just off the axis; it must still sit next
  // to the completed value at the centre.
  CHECK(std::abs(hardy_z(qi, 0.0) - (-3.900264920001955883005)) < 1e-3);
}

TEST_CASE("scan finds the known low zeros of the square lattice form") {
  const QuadraticForm qi(1, 0, 1);
  const double expected[6] = {6.020948904697596654903, 10.24377030416655455214,
                              12.98809801231242250745, 14.13472514173469379046,
                              16.34260710458722219498, 18.29199319612353483853};
  const ScanResult sc = scan_critical_line(qi, 0.0, 20.0, 0.01, 1);
  CHECK(sc.t_min == 0.0);
  CHECK(sc.t_max == 20.0);
  CHECK(sc.step == 0.01);
  CHECK(sc.warnings.empty());
  REQUIRE(sc.zeros.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(sc.zeros[i].t - expected[i]) < 1e-7);
    CHECK(sc.zeros[i].refinement_width <= 1e-9);
    // Genuine sign change across the reported zero.
    CHECK(hardy_z(qi, sc.zeros[i].t - 1e-5) *
              hardy_z(qi, sc.zeros[i].t + 1e-5) <
          0.0);
    // The completed function itself vanishes there.
    const double lam_mag =
        std::abs(hardy_z(qi, sc.zeros[i].t)) * std::exp(-0.5 * kPi * sc.zeros[i].t);
    CHECK(lam_mag < 1e-8);
  }
  CHECK(std::is_sorted(sc.zeros.begin(), sc.zeros.end(),
                       [](const CriticalZero& a, const CriticalZero& b) {
                         return a.t < b.t;
                       }));

  // Cross-check against the factor functions, which never touch the lattice
  // code: each ordinate kills the zeta factor or the beta factor.
  CHECK(std::abs(riemann_zeta(cdouble(0.5, expected[3]))) < 1e-8);
  for (const int i : {0, 1, 2, 4, 5}) {
    CHECK(std::abs(dirichlet_l_chi4(cdouble(0.5, expected[i]))) < 1e-8);
  }
  // And nearby points are far from zero, so the check above has teeth.
  CHECK(std::abs(dirichlet_l_chi4(cdouble(0.5, expected[0] + 0.05))) > 1e-3);
  CHECK(std::abs(riemann_zeta(cdouble(0.5, expected[3] + 0.05))) > 1e-3);
}

TEST_CASE("scan is worker-count independent and refines under step halving") {
  const QuadraticForm qi(1, 0, 1);
  const ScanResult a = scan_critical_line(qi, 0.0, 20.0, 0.01, 1);
  const ScanResult b = scan_critical_line(qi, 0.0, 20.0, 0.01, 3);
  REQUIRE(a.zeros.size() == b.zeros.size());
  for (std::size_t i = 0; i < a.zeros.size(); ++i) {
    CHECK(a.zeros[i].t == b.zeros[i].t);  // bitwise
  }
  const ScanResult fine = scan_critical_line(qi, 0.0, 20.0, 0.005, 1);
  CHECK(fine.zeros.size() >= a.zeros.size());
  for (const CriticalZero& z : a.zeros) {
    bool found = false;
    for (const CriticalZero& zf : fine.zeros) {
      if (std::abs(zf.t - z.t) < 1e-8) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("close zero pairs raise a coarse step warning") {
  // The square lattice form has two zeros 0.0038 apart near t = 84.73, one
  // from each factor. A 0.002 step resolves them two grid cells apart and
  // must attach a warning; a 0.01 step puts both inside one cell, where the
  // sign change cancels and the scan sees nothing at all.
  const QuadraticForm qi(1, 0, 1);
  const double t1 = 84.7317403637816286;  // beta factor zero
  const double t2 = 84.7354929805170501;  // zeta factor zero

  const ScanResult fine = scan_critical_line(qi, 84.5, 85.0, 0.002, 1);
  REQUIRE(fine.zeros.size() == 2);
  CHECK(std::abs(fine.zeros[0].t - t1) < 1e-6);
  CHECK(std::abs(fine.zeros[1].t - t2) < 1e-6);
  REQUIRE(fine.warnings.size() == 1);
  CHECK(fine.warnings[0].t_first <= fine.zeros[0].t);
  CHECK(fine.warnings[0].t_second <= fine.zeros[1].t);
  CHECK(fine.warnings[0].t_second - fine.warnings[0].t_first <= 3.0 * 0.002);

  const ScanResult coarse = scan_critical_line(qi, 84.5, 85.0, 0.01, 1);
  CHECK(coarse.zeros.empty());
  CHECK(coarse.warnings.empty());
}

TEST_CASE("zero spacings pool gaps and unfold to unit mean") {
  const std::vector<QuadraticForm> forms = {QuadraticForm(1, 0, 1)};
  const ZeroSpacingData data = epstein_zero_spacings(forms, 0.0, 30.0, 0.01, 1);
  REQUIRE(data.scans.size() == 1);
  const std::vector<CriticalZero>& zs = data.scans[0].zeros;
  CHECK(data.zero_count == zs.size());
  REQUIRE(data.raw_gaps.size() == zs.size() - 1);
  REQUIRE(data.unfolded_gaps.size() == zs.size() - 1);
  double raw_sum = 0.0;
  for (const double g : data.raw_gaps) {
    CHECK(g > 0.0);
    raw_sum += g;
  }
  CHECK(raw_sum == doctest::Approx(zs.back().t - zs.front().t).epsilon(1e-9));
  double mean = 0.0;
  for (const double g : data.unfolded_gaps) mean += g;
  mean /= static_cast<double>(data.unfolded_gaps.size());
  CHECK(mean > 0.6);
  CHECK(mean < 1.4);
}

TEST_CASE("zero spacings over two forms pool both scans") {
  const std::vector<QuadraticForm> forms = {QuadraticForm(1, 0, 1),
                                            QuadraticForm(1, 1, 1)};
  const ZeroSpacingData data = epstein_zero_spacings(forms, 0.0, 30.0, 0.01, 1);
  REQUIRE(data.scans.size() == 2);
  CHECK(data.zero_count ==
        data.scans[0].zeros.size() + data.scans[1].zeros.size());
  CHECK(data.unfolded_gaps.size() == data.zero_count - 2);
}

TEST_CASE("zero spacings demand enough zeros per form") {
  const std::vector<QuadraticForm> forms = {QuadraticForm(1, 0, 1)};
  CHECK_THROWS_AS(epstein_zero_spacings(forms, 0.5, 8.0, 0.01, 1),
                  InsufficientData);
}
