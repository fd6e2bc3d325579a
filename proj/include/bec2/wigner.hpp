#pragma once

// Wigner rotation matrix elements d^N_{m,m0}(theta) in the rescaled two-mode
// labels (j = N/2, angular m = m/2), and the unperturbed particle
// distribution P(m) = |d^N_{m,m0}|^2.
//
// Convention: d^N_{m,m0}(theta) = <N,m|U^dag|N,m0> at phi = 0 with
// U = exp(xi a^dag b - xi* a b^dag), xi = theta/2 e^{i phi}; for general phi
// the element picks up the phase e^{i phi (m-m0)/2}.
//
// The fast path evaluates the Jacobi-polynomial form with a three-term
// recurrence after reducing (m, m0) to the canonical wedge; the alternating
// binomial sum overflows/cancels catastrophically in double precision beyond
// N ~ 100 near theta = pi/2, so it is kept only as a quad-precision
// cross-check path for N <= 64 (wigner_d_reference).

#include <cmath>
#include <cstdint>
#include <vector>

#include <quadmath.h>

#include "bec2/errors.hpp"
#include "bec2/fock.hpp"

namespace bec2::wigner {

namespace detail {

inline double lbinom(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace detail

// Stable evaluation for N up to several thousand.  Flushes |d| < 1e-300 to 0.
inline double wigner_d(int N, int m, int m0, double theta) {
  if (N < 0) fail(errc::invalid_basis, "negative particle number");
  if (!fock::in_sector(N, m) || !fock::in_sector(N, m0))
    fail(errc::invalid_basis, "m, m0 must lie in the sector (parity and range)");

  // reduce to the standard wedge via k = min(j+mm, j-mm, j+mp, j-mp)
  // (doubled units: j2 = N, mp2 = m, mm2 = m0)
  const int j2 = N;
  const int mp2 = m, mm2 = m0;
  int k2, a2, lam2;
  const int c0 = j2 + mm2, c1 = j2 - mm2, c2 = j2 + mp2, c3 = j2 - mp2;
  k2 = std::min(std::min(c0, c1), std::min(c2, c3));
  if (k2 == c0) {
    a2 = mp2 - mm2; lam2 = mp2 - mm2;
  } else if (k2 == c1) {
    a2 = mm2 - mp2; lam2 = 0;
  } else if (k2 == c2) {
    a2 = mm2 - mp2; lam2 = 0;
  } else {
    a2 = mp2 - mm2; lam2 = mp2 - mm2;
  }
  const int k = k2 / 2, a = a2 / 2, lam = lam2 / 2;
  const int b = j2 - k2 - a;

  const double sh = std::sin(0.5 * theta), ch = std::cos(0.5 * theta);
  if ((sh == 0.0 && a > 0) || (ch == 0.0 && b > 0)) return 0.0;

  double lval = 0.5 * (detail::lbinom(j2 - k, k + a) - detail::lbinom(k + b, b));
  if (a > 0) lval += a * std::log(std::abs(sh));
  if (b > 0) lval += b * std::log(std::abs(ch));
  // sh >= 0 on [0, pi]; ch < 0 only for theta > pi, which callers do not use,
  // but keep the sign right anyway
  double sign = (lam % 2) ? -1.0 : 1.0;
  if (sh < 0.0 && (a % 2)) sign = -sign;
  if (ch < 0.0 && (b % 2)) sign = -sign;

  // P_k^{(a,b)}(cos theta), exponent-tracked three-term recurrence
  const double x = std::cos(theta);
  double pm1 = 0.0, p0 = 1.0, scale = 0.0;
  if (k >= 1) {
    pm1 = p0;
    p0 = (a + 1) + 0.5 * (a + b + 2) * (x - 1.0);
  }
  for (int kk = 2; kk <= k; ++kk) {
    const double q1 = 2.0 * kk * (kk + a + b) * (2.0 * kk + a + b - 2.0);
    const double q2 = (2.0 * kk + a + b - 1.0) *
                      ((2.0 * kk + a + b) * (2.0 * kk + a + b - 2.0) * x +
                       double(a) * a - double(b) * b);
    const double q3 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * (2.0 * kk + a + b);
    const double pnext = (q2 * p0 - q3 * pm1) / q1;
    pm1 = p0;
    p0 = pnext;
    const double mag = std::max(std::abs(p0), std::abs(pm1));
    if (mag > 1e250) {
      p0 /= mag;
      pm1 /= mag;
      scale += std::log(mag);
    }
  }
  if (p0 == 0.0) return 0.0;
  if (p0 < 0.0) sign = -sign;
  const double out = sign * std::exp(lval + scale + std::log(std::abs(p0)));
  return std::abs(out) < 1e-300 ? 0.0 : out;
}

// Cross-check path: the explicit alternating sum with exact integer binomials,
// evaluated in binary128.  Intended for N <= 64 (exact binomials fit 64 bits
// up to N = 66; the quad mantissa absorbs the cancellation at this size).
inline double wigner_d_reference(int N, int m, int m0, double theta) {
  if (N < 0 || N > 66) fail(errc::resource_limit, "reference path supports N <= 66");
  if (!fock::in_sector(N, m) || !fock::in_sector(N, m0))
    fail(errc::invalid_basis, "m, m0 must lie in the sector (parity and range)");
  auto binom = [](int n, int k) -> __float128 {
    if (k < 0 || k > n) return 0;
    unsigned __int128 r = 1;  // intermediates exceed 64 bits near C(64,32)
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return __float128(static_cast<unsigned long long>(r));
  };
  const int kmin = std::max(0, (m0 - m) / 2);
  const int kmax = std::min((N - m) / 2, (N + m0) / 2);
  const __float128 th = theta;
  const __float128 t = tanq(th / 2);
  const __float128 ch = cosq(th / 2);
  if (kmax < kmin) return 0.0;
  __float128 S = 0;
  for (int k = kmin; k <= kmax; ++k) {
    __float128 term = binom((N + m0) / 2, k) * binom((N - m0) / 2, (N - m) / 2 - k);
    term *= powq(t, __float128((m - m0) / 2 + 2 * k));
    S += (k % 2) ? -term : term;
  }
  // sqrt of the factorial ratio via lgamma in quad
  __float128 lpref = 0.5Q * (lgammaq(__float128((N + m) / 2 + 1)) +
                             lgammaq(__float128((N - m) / 2 + 1)) -
                             lgammaq(__float128((N + m0) / 2 + 1)) -
                             lgammaq(__float128((N - m0) / 2 + 1)));
  __float128 pref = expq(lpref) * powq(ch, __float128(N));
  __float128 val = pref * S;
  if (((m - m0) / 2) % 2) val = -val;
  return static_cast<double>(val);
}

struct DistributionSeries {
  int N = 0;
  int m0 = 0;
  double theta = 0.0;
  double phi = 0.0;
  std::vector<int> m_values;
  std::vector<double> p0;  // unperturbed |d|^2
  std::vector<double> p1;  // signed first-order correction; empty if none

  std::vector<double> total() const {
    std::vector<double> out(p0);
    if (!p1.empty())
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += p1[i];
    return out;
  }
  double sum_total() const {
    double s = 0.0;
    auto t = total();
    for (double v : t) s += v;
    return s;
  }
};

// P(m) = |d^N_{m,m0}|^2; independent of phi.
inline DistributionSeries distribution(int N, int m0, double theta) {
  DistributionSeries out;
  out.N = N;
  out.m0 = m0;
  out.theta = theta;
  out.m_values = fock::allowed_m(N);
  out.p0.reserve(N + 1);
  for (int m : out.m_values) {
    const double d = wigner_d(N, m, m0, theta);
    out.p0.push_back(d * d);
  }
  return out;
}

}  // namespace bec2::wigner
