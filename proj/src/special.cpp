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
#include "circlezeros/special.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "circlezeros/errors.hpp"

namespace circlezeros {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// log sin(pi z) without overflowing for large |Im z|; the branch is whatever
// std::log picks, which is fine because callers only exponentiate.
cdouble log_sin_pi(cdouble z) {
  const double y = z.imag();
  if (y > 8.0) {
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
    const cdouble iw = cdouble(0.0, kPi) * z;
    return cdouble(-0.69314718055994530942, 0.5 * kPi) - iw +
           std::log(1.0 - std::exp(2.0 * iw));
  }
  if (y < -8.0) {
    return std::conj(log_sin_pi(std::conj(z)));
  }
  return std::log(std::sin(kPi * z));
}

cdouble log_gamma_main(cdouble z) {
  // Lanczos, g = 7, 9 terms; callers guarantee Re z >= 0.5.
  static const double kC[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  const cdouble zz = z - 1.0;
  cdouble acc = kC[0];
  for (int k = 1; k < 9; ++k) acc += kC[k] / (zz + static_cast<double>(k));
  const cdouble t = zz + 7.5;
  return kLogSqrt2Pi + (zz + 0.5) * std::log(t) - t + std::log(acc);
}

// Bernoulli numbers over factorials, B_{2k}/(2k)! for k = 1..12.
constexpr double kBernOverFact[12] = {
    8.3333333333333333333e-02,  -1.3888888888888888889e-03,
    3.3068783068783068783e-05,  -8.2671957671957671958e-07,
    2.0876756987868098979e-08,  -5.2841901386874931848e-10,
    1.3382536530684678833e-11,  -3.3896802963225828668e-13,
    8.5860620562778445640e-15,  -2.1748686985580618730e-16,
    5.5090028283602295152e-18,  -1.3954464685812523340e-19};

int zeta_em_terms(cdouble u) {
  const double t = std::abs(u.imag());
  return std::max(32, static_cast<int>(std::ceil(0.75 * t)) + 8);
}

// All of the Euler-Maclaurin tail for sum_{n>=0} (n+a)^{-u} except the
// B^{1-u}/(u-1) piece, which carries the pole at u = 1 and which some
// callers need to combine across residue classes before it blows up.
cdouble zeta_em_core(cdouble u, double a, int nterms) {
  cdouble sum = 0.0;
  for (int n = 0; n < nterms; ++n) {
    sum += std::pow(cdouble(static_cast<double>(n) + a, 0.0), -u);
  }
  const cdouble base(static_cast<double>(nterms) + a, 0.0);
  const cdouble bmu = std::pow(base, -u);
  sum += 0.5 * bmu;
  cdouble poch = u;
  cdouble scale = bmu / base;
  const cdouble step = 1.0 / (base * base);
  for (int k = 1; k <= 12; ++k) {
    sum += kBernOverFact[k - 1] * poch * scale;
    poch *= (u + static_cast<double>(2 * k - 1)) *
            (u + static_cast<double>(2 * k));
    scale *= step;
  }
  return sum;
}

cdouble zeta_em(cdouble u, double a) {
  // Euler-Maclaurin for sum_{n>=0} (n+a)^{-u}, continued past the pole.
  const int nterms = zeta_em_terms(u);
  const cdouble base(static_cast<double>(nterms) + a, 0.0);
  return zeta_em_core(u, a, nterms) +
         std::pow(base, -u) * base / (u - 1.0);
}

// e^z - 1 without cancellation for small z.
cdouble expm1_c(cdouble z) {
  if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
  cdouble acc = 0.0;
  for (int k = 18; k >= 1; --k) {
    acc = z / static_cast<double>(k) * (1.0 + acc);
  }
  return acc;
}

// Continued fraction for Gamma(s, x), modified Lentz. Good for x >= |s| + 1.
cdouble gamma_upper_cf(cdouble s, double x) {
  const double tiny = 1e-290;
  cdouble b = cdouble(x, 0.0) + 1.0 - s;
  cdouble c = cdouble(1.0 / tiny, 0.0);
  cdouble d = (std::abs(b) < tiny) ? cdouble(1.0 / tiny, 0.0) : 1.0 / b;
  cdouble f = d;
  for (int i = 1; i <= 2000; ++i) {
    const cdouble an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = b + an * d;
    if (std::abs(d) < tiny) d = cdouble(tiny, 0.0);
    c = b + an / c;
    if (std::abs(c) < tiny) c = cdouble(tiny, 0.0);
    d = 1.0 / d;
    const cdouble delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x)) * f;
}

// Ascending series for the lower function,
//   gamma(s, x) = x^s e^{-x} sum_n x^n / (s (s+1) ... (s+n)),
// then Gamma(s, x) = Gamma(s) - gamma(s, x). Callers keep Re s > -0.25 so the
// leading 1/s term does not blow up.
cdouble gamma_upper_series(cdouble s, double x) {
  cdouble term = 1.0 / s;
  cdouble acc = term;
  for (int n = 1; n <= 600; ++n) {
    term *= x / (s + static_cast<double>(n));
    acc += term;
    if (std::abs(term) < 1e-17 * std::abs(acc)) break;
  }
  const cdouble lower = std::exp(s * std::log(x) - x) * acc;
  return std::exp(log_gamma(s)) - lower;
}

// Gamma(-m, x) for integer m >= 0 via E1 and downward recurrence. Only used
// for x below m + 1, where the ascending E1 series is comfortable.
cdouble gamma_upper_nonpos_int(int m, double x) {
  // E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
  const double egamma = 0.57721566490153286061;
  double e1 = -egamma - std::log(x);
  double term = 1.0;
  for (int k = 1; k <= 80; ++k) {
    term *= -x / static_cast<double>(k);
    const double add = -term / static_cast<double>(k);
    e1 += add;
    if (std::abs(add) < 1e-18 * std::abs(e1) + 1e-300) break;
  }
  double g = e1;  // Gamma(0, x)
  double xp = 1.0;
  const double ex = std::exp(-x);
  for (int j = 1; j <= m; ++j) {
    xp /= x;  // x^{-j}
    g = (xp * ex - g) / static_cast<double>(j);
  }
  return cdouble(g, 0.0);
}

}  // namespace

cdouble log_gamma(cdouble z) {
  if (z.real() >= 0.5) return log_gamma_main(z);
  // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
  return cdouble(1.1447298858494001741, 0.0) - log_sin_pi(z) -
         log_gamma_main(1.0 - z);
}

cdouble riemann_zeta(cdouble u) { return zeta_em(u, 1.0); }

cdouble hurwitz_zeta(cdouble u, double a) {
  if (!(a > 0.0 && a <= 1.0)) {
    throw DomainError("hurwitz_zeta requires 0 < a <= 1");
  }
  return zeta_em(u, a);
}

cdouble dirichlet_l_chi4(cdouble u) {
  // 4^{-u} (zeta(u, 1/4) - zeta(u, 3/4)).  The character is odd with zero
  // mean, so the two Hurwitz pole terms cancel and L is entire; naively
  // subtracting the series would produce inf - inf at u = 1, so the pole
  // pair (Ba^w - Bb^w)/(-w), w = 1 - u, is combined analytically instead.
  const int nterms = zeta_em_terms(u);
  const double ba = static_cast<double>(nterms) + 0.25;
  const double bb = static_cast<double>(nterms) + 0.75;
  const double dl = std::log1p(-0.5 / bb);  // log(ba / bb), no cancellation
  const cdouble w = 1.0 - u;
  cdouble pole_pair;
  if (w == cdouble(0.0, 0.0)) {
    pole_pair = cdouble(-dl, 0.0);
  } else {
    pole_pair = -std::exp(w * std::log(bb)) * expm1_c(w * dl) / w;
  }
  return std::pow(cdouble(4.0, 0.0), -u) *
         (zeta_em_core(u, 0.25, nterms) - zeta_em_core(u, 0.75, nterms) +
          pole_pair);
}

cdouble upper_incomplete_gamma(cdouble s, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("upper_incomplete_gamma requires finite x > 0");
  }
  if (x >= std::abs(s) + 1.0) return gamma_upper_cf(s, x);
  // Nonpositive integer s: the series denominators vanish, go through E1.
  if (s.imag() == 0.0 && s.real() <= 1e-12) {
    const double r = std::round(s.real());
    if (std::abs(s.real() - r) < 1e-12 && r <= 0.0) {
      return gamma_upper_nonpos_int(static_cast<int>(-r), x);
    }
  }
  int lift = 0;
  while (s.real() + lift <= -0.25) ++lift;
  cdouble g = gamma_upper_series(s + static_cast<double>(lift), x);
  const double ex = std::exp(-x);
  for (int j = lift - 1; j >= 0; --j) {
    const cdouble sj = s + static_cast<double>(j);
    g = (g - std::exp(sj * std::log(x)) * ex) / sj;
  }
  return g;
}

cdouble bessel_k_scaled(cdouble nu, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_k_scaled requires finite x > 0");
  }
  if (std::abs(nu.real()) > 0.55) {
    throw DomainError("bessel_k_scaled supports |Re nu| <= 0.55");
  }
  if (nu.imag() < 0.0) return std::conj(bessel_k_scaled(std::conj(nu), x));
  const double mu = nu.real();
  const double tau = nu.imag();
  const double amu = std::abs(mu);
  cdouble acc = 0.0;
  double h = 0.0;
  if (x >= tau + 38.0 && x >= 0.5 * kPi * tau + 2.0) {
    // Real-axis trapezoid of (1/2) int e^{-x cosh u + nu u} du; the shift sh
    // keeps every exponent non-positive-ish so nothing overflows.  The
    // second branch condition matters: the largest summand is e^{pi tau/2-x},
    // so without x >= pi tau/2 + 2 the e^{i tau u} oscillation would have to
    // cancel the sum down from that peak and roundoff would cap the absolute
    // accuracy near e^{pi tau/2 - x - 36}.  The tilted contour below keeps
    // its peak summand at e^{-2} or less in that regime instead.
    const double sh = 0.5 * kPi * tau - x;
    h = 2.0 * kPi * 0.45 / (46.0 + x + tau + amu);
    double bigu = 1.0;
    for (int it = 0; it < 40; ++it) {
      bigu = std::acosh(1.0 + (48.0 + amu * bigu) / x);
    }
    const int n = static_cast<int>(std::ceil(bigu / h));
    for (int k = -n; k <= n; ++k) {
      const double u = k * h;
      acc += std::exp(
          cdouble(sh - x * (std::cosh(u) - 1.0) + mu * u, tau * u));
    }
  } else {
    // Oscillatory regime: tilt the contour to Im u = pi/2 - eta, which trades
    // the e^{i tau u} oscillation for decay and leaves only a tame e^{tau eta}
    // prefactor against the pi tau / 2 rescaling.
    const double eta = std::min(1.0, 5.0 / std::max(tau, 5.0));
    const double c = 0.5 * kPi - eta;
    const double cosc = std::cos(c);
    const double sinc = std::sin(c);
    double bigu = 1.0;
    for (int it = 0; it < 40; ++it) {
      bigu = std::acosh(1.0 + (48.0 + tau * eta + amu * bigu) / (x * cosc));
    }
    h = 2.0 * kPi * 0.9 * eta / (46.0 + x * cosc + tau * eta + amu);
    const cdouble pre(tau * eta, mu * c);
    const int n = static_cast<int>(std::ceil(bigu / h));
    for (int k = -n; k <= n; ++k) {
      const double u = k * h;
      acc += std::exp(cdouble(-x * std::cosh(u) * cosc + mu * u,
                              -x * std::sinh(u) * sinc + tau * u) +
                      pre);
    }
  }
  return 0.5 * h * acc;
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(x)) {
    throw DomainError("regularized_gamma_q requires a > 0 and finite x >= 0");
  }
  if (x == 0.0) return 1.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // Series for P(a, x), then complement.
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 1; n <= 5000; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - lg);
    return 1.0 - p;
  }
  // Lentz continued fraction for Q(a, x) directly.
  const double tiny = 1e-290;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double f = d;
  for (int i = 1; i <= 5000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - lg) * f;
}

}  // namespace circlezeros
