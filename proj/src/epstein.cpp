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
#include "circlezeros/epstein.hpp"

#include <algorithm>
#include <cmath>

#include "circlezeros/parallel.hpp"
#include "circlezeros/special.hpp"

namespace circlezeros {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogPi = 1.1447298858494001741;

bool point_in_f(double x, double y, double eps = 1e-12) {
  if (!(x > -0.5 - eps && x <= 0.5 + eps)) return false;
  const double r2 = x * x + y * y;
  if (r2 > 1.0 + eps) return true;
  return r2 >= 1.0 - eps && x >= -eps;
}

}  // namespace

QuadraticForm::QuadraticForm(double a_, double b_, double c_)
    : a(a_), b(b_), c(c_) {
  if (!(a > 0.0) || !(b * b - 4.0 * a * c < 0.0)) {
    throw NotPositiveDefinite("form requires a > 0 and b^2 - 4ac < 0");
  }
}

ReducedForm reduce_form(const QuadraticForm& q) {
  double x = q.b / (2.0 * q.a);
  double y = std::sqrt(-q.discriminant()) / (2.0 * q.a);
  for (int iter = 0; iter < 512; ++iter) {
    const double k = std::ceil(x - 0.5);  // shift x into (-1/2, 1/2]
    if (k != 0.0) x -= k;
    const double r2 = x * x + y * y;
    if (r2 > 1.0 + 1e-15) break;
    if (r2 >= 1.0 - 1e-15) {
      // On the unit circle: the convention keeps the x >= 0 representative.
      if (x >= -1e-15) {
        if (x < 0.0) x = 0.0;
        break;
      }
    }
    const double nx = -x / r2;
    const double ny = y / r2;
    x = nx;
    y = ny;
  }
  UpperHalfPoint p{x, y, point_in_f(x, y)};
  return ReducedForm{p, 0.5 * std::sqrt(-q.discriminant())};
}

QuadraticForm reduced_equivalent(const QuadraticForm& q) {
  const ReducedForm rf = reduce_form(q);
  const double x = rf.point.x;
  const double y = rf.point.y;
  const double ar = rf.scale / y;
  return QuadraticForm(ar, 2.0 * ar * x, ar * (x * x + y * y));
}

DirectSumResult epstein_direct(const QuadraticForm& q, cdouble s,
                               long radius) {
  if (!(s.real() > 1.0)) {
    throw DomainError("epstein_direct requires Re s > 1");
  }
  if (radius < 1) throw DomainError("epstein_direct requires radius >= 1");
  const bool real_s = (s.imag() == 0.0);
  const double sr = s.real();
  cdouble acc = 0.0;
  long terms = 0;
  // Shells max(|m|,|n|) = r, summed inner to outer so terms shrink.
  for (long r = 1; r <= radius; ++r) {
    cdouble shell = 0.0;
    auto add = [&](long m, long n) {
      const double v = q.eval(static_cast<double>(m), static_cast<double>(n));
      if (real_s) {
        shell += std::pow(v, -sr);
      } else {
        shell += std::exp(-s * std::log(v));
      }
      ++terms;
    };
    for (long m = -r; m <= r; ++m) {
      add(m, r);
      add(m, -r);
    }
    for (long n = -r + 1; n <= r - 1; ++n) {
      add(r, n);
      add(-r, n);
    }
    acc += shell;
  }
  // Q(m,n) >= mu (m^2 + n^2) >= mu r^2 with mu the least eigenvalue, and a
  // shell has 8r points, so the dropped tail is at most
  // 8 mu^{-sigma} ( R^{2-2sigma} / (2sigma-2) + R^{1-2sigma} ).
  const double mu =
      0.5 * (q.a + q.c - std::sqrt((q.a - q.c) * (q.a - q.c) + q.b * q.b));
  const double rr = static_cast<double>(radius);
  const double tail =
      8.0 * std::pow(mu, -sr) *
      (std::pow(rr, 2.0 - 2.0 * sr) / (2.0 * sr - 2.0) +
       std::pow(rr, 1.0 - 2.0 * sr));
  return DirectSumResult{acc, tail, terms};
}

cdouble epstein_completed(const QuadraticForm& q, cdouble s) {
  if (std::abs(s) < 1e-6 || std::abs(s - 1.0) < 1e-6) {
    throw PoleProximity("epstein_completed: s within 1e-6 of a pole");
  }
  // The representation below is invariant under s -> 1-s term by term, so
  // evaluating at one canonical member of {s, 1-s} makes the functional
  // equation hold exactly. Accuracy at the canonical point is the same.
  const cdouble sig = (s.real() < 0.5) ? 1.0 - s : s;
  const cdouble oms = 1.0 - sig;
  const ReducedForm rf = reduce_form(q);
  const double x = rf.point.x;
  const double y = rf.point.y;
  // lambda_{mn} = 2 pi Q_red(m,n) / sqrt(|disc|) = pi |m + n z|^2 / y.
  // Truncation horizon: terms carry e^{-lambda}, and the completed value can
  // be as small as e^{-pi |Im s| / 2}, so the horizon grows with |Im s| to
  // keep the dropped tail below 1e-8 of the result, not just of the terms.
  const double lam_max =
      std::max(50.0, 46.0 + 1.6 * std::abs(sig.imag()) + std::abs(sig.real()));
  cdouble acc = 0.0;
  const double wcap = lam_max * y / kPi;  // (m+nx)^2 + (ny)^2 <= wcap
  const long nmax = static_cast<long>(std::floor(std::sqrt(wcap) / y));
  for (long n = 0; n <= nmax; ++n) {
    const double rem = wcap - static_cast<double>(n) * n * y * y;
    if (rem < 0.0) break;
    const double w = std::sqrt(rem);
    long mlo, mhi;
    if (n == 0) {
      mlo = 1;  // (m,0) with m >= 1; the (-m,0) partner is the factor 2
      mhi = static_cast<long>(std::floor(w));
    } else {
      mlo = static_cast<long>(std::ceil(-n * x - w));
      mhi = static_cast<long>(std::floor(-n * x + w));
    }
    for (long m = mlo; m <= mhi; ++m) {
      const double mx = static_cast<double>(m) + static_cast<double>(n) * x;
      const double ny = static_cast<double>(n) * y;
      const double lam = kPi * (mx * mx + ny * ny) / y;
      if (lam > lam_max) continue;
      const double ll = std::log(lam);
      acc += std::exp(-sig * ll) * upper_incomplete_gamma(sig, lam) +
             std::exp((sig - 1.0) * ll) * upper_incomplete_gamma(oms, lam);
    }
  }
  return 2.0 * acc + 1.0 / (sig * (sig - 1.0));
}

double hardy_z(const QuadraticForm& q, double t) {
  const ReducedForm rf = reduce_form(q);
  const double x = rf.point.x;
  const double y = rf.point.y;
  // Z is even in t, and at t = 0 the two xi terms of the constant part have
  // a removable pole pair; evaluating just off axis sidesteps it with error
  // far below the quadrature floor.
  const double tt = std::max(std::abs(t), 1e-4);
  const cdouble u(1.0, 2.0 * tt);
  const cdouble half_u = 0.5 * u;
  const cdouble logpref =
      cdouble(0.5 * kPi * tt, 0.0) - half_u * kLogPi + log_gamma(half_u);
  const cdouble xihat = std::exp(logpref) * riemann_zeta(u);
  const double ly = std::log(y);
  const cdouble ypow = std::exp(cdouble(0.5 * ly, tt * ly));
  double z = 4.0 * (xihat * ypow).real();
  const double sqy = std::sqrt(y);
  const cdouble nu(0.0, tt);
  int quiet = 0;
  for (int n = 1; n <= 4096; ++n) {
    const double arg = 2.0 * kPi * n * y;
    const double khat = bessel_k_scaled(nu, arg).real();
    // c_n(t) = sum over divisors d of n of cos(t log(n / d^2)); the divisor
    // pairing d <-> n/d is what makes the coefficient real.
    double cn = 0.0;
    int dcount = 0;
    for (int d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      const int e = n / d;
      cn += std::cos(tt * std::log(static_cast<double>(n) /
                                   (static_cast<double>(d) * d)));
      ++dcount;
      if (e != d) {
        cn += std::cos(tt * std::log(static_cast<double>(n) /
                                     (static_cast<double>(e) * e)));
        ++dcount;
      }
    }
    z += 8.0 * sqy * cn * khat * std::cos(2.0 * kPi * n * x);
    // The Bessel factor decays monotonically once past its turning point;
    // three consecutive negligible factors end the sum (cn alone can vanish).
    if (std::abs(khat) * (dcount + 2) * 8.0 * sqy <
        1e-17 * std::max(1.0, std::abs(z))) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  return z;
}

namespace {

struct WindowScan {
  std::vector<CriticalZero> zeros;
  std::vector<StepTooCoarse> warnings;
};

double grid_t(double t_min, double step, long i) { return t_min + i * step; }

CriticalZero bisect_zero(const QuadraticForm& q, double lo, double hi,
                         double zlo) {
  for (int it = 0; it < 64 && (hi - lo) > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double zm = hardy_z(q, mid);
    if (zm == 0.0) {
      lo = mid;
      hi = mid;
      break;
    }
    if ((zm > 0.0) == (zlo > 0.0)) {
      lo = mid;
      zlo = zm;
    } else {
      hi = mid;
    }
  }
  return CriticalZero{0.5 * (lo + hi), hi - lo};
}

}  // namespace

ScanResult scan_critical_line(const QuadraticForm& q, double t_min,
                              double t_max, double step, int workers) {
  if (!(t_min >= 0.0) || !(t_max > t_min) || !(step > 0.0)) {
    throw DomainError("scan_critical_line requires 0 <= t_min < t_max, step > 0");
  }
  const long nint = static_cast<long>(std::floor((t_max - t_min) / step + 1e-9));
  if (nint < 1) throw DomainError("scan_critical_line: fewer than one step");
  // Fixed-size windows with a three-step overlap; window layout does not
  // depend on the worker count, and the overlap duplicates are removed by
  // proximity below, so any worker count yields the identical result.
  const long kWindow = 256;
  const long nwin = (nint + kWindow - 1) / kWindow;
  std::vector<WindowScan> parts(static_cast<std::size_t>(nwin));
  parallel_for_indexed(static_cast<std::size_t>(nwin), workers,
                       [&](std::size_t wi) {
    const long lo = std::max<long>(0, static_cast<long>(wi) * kWindow - 3);
    const long hi =
        std::min<long>(nint, (static_cast<long>(wi) + 1) * kWindow + 3);
    WindowScan& ws = parts[wi];
    double prev = hardy_z(q, grid_t(t_min, step, lo));
    long last_change = -1000;
    double last_change_t = 0.0;
    for (long i = lo; i < hi; ++i) {
      const double tcur = grid_t(t_min, step, i + 1);
      const double cur = hardy_z(q, tcur);
      bool change = false;
      if (prev == 0.0) {
        ws.zeros.push_back(CriticalZero{grid_t(t_min, step, i), 0.0});
        change = true;
      } else if (cur != 0.0 && (cur > 0.0) != (prev > 0.0)) {
        ws.zeros.push_back(
            bisect_zero(q, grid_t(t_min, step, i), tcur, prev));
        change = true;
      }
      if (change) {
        if (i - last_change < 3 && last_change >= lo) {
          ws.warnings.push_back(
              StepTooCoarse{last_change_t, grid_t(t_min, step, i)});
        }
        last_change = i;
        last_change_t = grid_t(t_min, step, i);
      }
      prev = cur;
    }
  });
  ScanResult out;
  out.t_min = t_min;
  out.t_max = t_max;
  out.step = step;
  for (const WindowScan& ws : parts) {
    for (const CriticalZero& z : ws.zeros) {
      if (!out.zeros.empty() && std::abs(z.t - out.zeros.back().t) < 0.5 * step)
        continue;
      out.zeros.push_back(z);
    }
    for (const StepTooCoarse& w : ws.warnings) {
      if (!out.warnings.empty() &&
          std::abs(w.t_first - out.warnings.back().t_first) < 0.5 * step)
        continue;
      out.warnings.push_back(w);
    }
  }
  return out;
}

ZeroSpacingData epstein_zero_spacings(const std::vector<QuadraticForm>& forms,
                                      double t_min, double t_max, double step,
                                      int workers) {
  if (forms.empty()) {
    throw DomainError("epstein_zero_spacings requires at least one form");
  }
  ZeroSpacingData out;
  out.zero_count = 0;
  for (const QuadraticForm& q : forms) {
    ScanResult sc = scan_critical_line(q, t_min, t_max, step, workers);
    const std::vector<CriticalZero>& zs = sc.zeros;
    const long k = static_cast<long>(zs.size());
    if (k < 5) {
      throw InsufficientData(
          "epstein_zero_spacings: a form produced fewer than 5 zeros");
    }
    for (long i = 0; i + 1 < k; ++i) {
      const double gap = zs[i + 1].t - zs[i].t;
      out.raw_gaps.push_back(gap);
      // Local density from a window of nearby zeros, clamped at the ends.
      const long lo = std::max<long>(0, i - 3);
      const long hi = std::min<long>(k - 1, i + 4);
      const double rho =
          static_cast<double>(hi - lo) / (zs[hi].t - zs[lo].t);
      out.unfolded_gaps.push_back(gap * rho);
    }
    out.zero_count += zs.size();
    out.scans.push_back(std::move(sc));
  }
  return out;
}

}  // namespace circlezeros
