#pragma once

// Analytic matrix elements <N,m'|U H' U^dag|N,m> for the five coupling
// perturbations, eq.-style first-order corrections, the perturbed particle
// distribution, and the degenerate 2x2 theory.
//
// The off-diagonal phases and two diagonal coefficients here come from a
// fresh conjugation of each bare perturbation; the full matrices are pinned
// entrywise against the numeric oracle in the test suite.

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "bec2/errors.hpp"
#include "bec2/fock.hpp"
#include "bec2/model.hpp"
#include "bec2/wigner.hpp"

namespace bec2::perturb {

using complexd = std::complex<double>;

enum class Kind { Omega, LambdaSmall, Uelastic, LambdaBig, Mu };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Omega: return "omega";
    case Kind::LambdaSmall: return "lambda";
    case Kind::Uelastic: return "U";
    case Kind::LambdaBig: return "Lambda";
    case Kind::Mu: return "mu";
  }
  return "?";
}

struct PerturbationKind {
  Kind tag = Kind::Omega;
  double delta = 0.0;
};

// breakdown threshold for the first-order coefficient table
inline constexpr double kSmallnessBudget = 0.1;

namespace detail {

inline double sq(double x) { return x * x; }

// sqrt((N -+ m)(N +- m + 2)) = sqrt(N(N+2) - m(m +- 2)), clamped at the edges
inline double s2(int N, int m, int pm) {
  const double v = (double(N) - pm * m) * (double(N) + pm * m + 2.0);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

inline double s4(int N, int m, int pm) {
  const double v1 = (double(N) - pm * m) * (double(N) - pm * m - 2.0);
  const double v2 = (double(N) + pm * m + 2.0) * (double(N) + pm * m + 4.0);
  const double v = v1 * v2;
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace detail

// Matrix element of the conjugated perturbation (including the strength
// delta) between <N,m_row| and |N,m_col>.  Selection rules: omega/lambda
// couple |dm| <= 2, the collision kinds |dm| <= 4; everything else is 0.
inline complexd matrix_element(const PerturbationKind& kind, double theta, double phi, int N,
                               int m_row, int m_col) {
  if (!fock::in_sector(N, m_row) || !fock::in_sector(N, m_col))
    fail(errc::invalid_basis, "labels outside sector");
  const int d = m_row - m_col;
  const int m = m_col;
  const double c = std::cos(theta), s = std::sin(theta);
  const double c2t = std::cos(2.0 * theta), s2t = std::sin(2.0 * theta);
  const complexd w = std::exp(complexd(0.0, phi));
  auto wpow = [&](int k) { return std::exp(complexd(0.0, phi * k)); };
  const double dl = kind.delta;

  switch (kind.tag) {
    case Kind::Omega:
      if (d == 0) return dl * m * c;
      if (d == 2 || d == -2) {
        const int pm = d / 2;
        return -0.5 * dl * s * wpow(pm) * detail::s2(N, m, pm);
      }
      return 0.0;
    case Kind::LambdaSmall:
      if (d == 0) return dl * m * s;
      if (d == 2 || d == -2) {
        const int pm = d / 2;
        return 0.5 * dl * c * wpow(pm) * detail::s2(N, m, pm);
      }
      return 0.0;
    case Kind::Uelastic:
      if (d == 0)
        return 0.25 * dl *
               (c * c * (double(N) * N - double(m) * m) +
                s * s * (0.5 * (double(N) * N + double(m) * m) - N));
      if (d == 2 || d == -2) {
        const int pm = d / 2;
        return 0.125 * dl * s2t * wpow(pm) * detail::s2(N, m, pm) * double(m + pm);
      }
      if (d == 4 || d == -4) {
        const int pm = d / 4;
        return -0.0625 * dl * s * s * wpow(2 * pm) * detail::s4(N, m, pm);
      }
      return 0.0;
    case Kind::LambdaBig:
      if (d == 0) return 0.5 * dl * s * s * (0.5 * (3.0 * double(m) * m - double(N) * N) - N);
      if (d == 2 || d == -2) {
        const int pm = d / 2;
        return 0.25 * dl * s2t * wpow(pm) * detail::s2(N, m, pm) * double(m + pm);
      }
      if (d == 4 || d == -4) {
        const int pm = d / 4;
        return 0.125 * dl * (1.0 + c * c) * wpow(2 * pm) * detail::s4(N, m, pm);
      }
      return 0.0;
    case Kind::Mu:
      if (d == 0) return 0.5 * dl * s2t * (0.5 * (3.0 * double(m) * m - double(N) * N) - N);
      if (d == 2 || d == -2) {
        const int pm = d / 2;
        return 0.5 * dl * c2t * wpow(pm) * detail::s2(N, m, pm) * double(m + pm);
      }
      if (d == 4 || d == -4) {
        const int pm = d / 4;
        return -0.125 * dl * s2t * wpow(2 * pm) * detail::s4(N, m, pm);
      }
      return 0.0;
  }
  (void)w;
  return 0.0;
}

// Dense (N+1)x(N+1) matrix of the conjugated perturbation.
inline Eigen::MatrixXcd full_matrix(const PerturbationKind& kind, double theta, double phi,
                                    int N) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (int mr = -N; mr <= N; mr += 2)
    for (int mc = -N; mc <= N; mc += 2) {
      if (std::abs(mr - mc) > 4) continue;
      M(fock::sector_index(N, mr), fock::sector_index(N, mc)) =
          matrix_element(kind, theta, phi, N, mr, mc);
    }
  return M;
}

// Bare (unconjugated) perturbation operator, for oracle cross-checks.
inline Eigen::MatrixXcd bare_matrix(const PerturbationKind& kind, double phi, int N) {
  using fock::MonomialOp;
  using fock::build_operator_matrix;
  const complexd w = std::exp(complexd(0.0, phi));
  Eigen::MatrixXcd M;
  switch (kind.tag) {
    case Kind::Omega: {
      auto na = build_operator_matrix(MonomialOp::from_powers(1, 0, 1, 0), N);
      auto nb = build_operator_matrix(MonomialOp::from_powers(0, 1, 0, 1), N);
      M = na - nb;
      break;
    }
    case Kind::LambdaSmall: {
      auto Jp = build_operator_matrix(MonomialOp::from_powers(1, 0, 0, 1), N);
      M = w * Jp + Eigen::MatrixXcd(std::conj(w) * Jp.adjoint());
      break;
    }
    case Kind::Uelastic:
      M = build_operator_matrix(MonomialOp::from_powers(1, 1, 1, 1), N);
      break;
    case Kind::LambdaBig: {
      auto P = build_operator_matrix(MonomialOp::from_powers(2, 0, 0, 2), N);
      M = w * w * P + Eigen::MatrixXcd(std::conj(w * w) * P.adjoint());
      break;
    }
    case Kind::Mu: {
      auto m1 = build_operator_matrix(MonomialOp::from_powers(2, 0, 1, 1), N);
      auto m2 = build_operator_matrix(MonomialOp::from_powers(1, 1, 0, 2), N);
      Eigen::MatrixXcd t = m1 - m2;
      M = w * t + Eigen::MatrixXcd(std::conj(w) * t.adjoint());
      break;
    }
  }
  return kind.delta * M;
}

// ---- degeneracies -------------------------------------------------------

// Coupled degenerate pairs (m1 > m2): E_{m1} = E_{m2} iff m1 + m2 = -A1/A2,
// restricted to the coupling band m1 - m2 in {2, 4}.  Parity leaves at most
// one viable pair; both candidates are checked.
inline std::vector<std::pair<int, int>> detect_degeneracies(double A1, double A2, int N) {
  if (A2 == 0.0) fail(errc::unsupported_parameters, "A2 = 0 gives a flat quadratic term");
  std::vector<std::pair<int, int>> out;
  auto energy_equal = [&](int m1, int m2) {
    const double e1 = model::energy(A1, A2, m1), e2 = model::energy(A1, A2, m2);
    const double scale = std::max({1.0, std::abs(e1), std::abs(e2)});
    return std::abs(e1 - e2) <= 1e-9 * scale;
  };
  const double s = -A1 / A2;
  for (int gap : {2, 4}) {
    // m1 + m2 = s, m1 - m2 = gap
    const double m1d = 0.5 * (s + gap);
    const int m1 = int(std::lround(m1d));
    const int m2 = m1 - gap;
    if (std::abs(m1d - m1) > 0.25) continue;
    if (!fock::in_sector(N, m1) || !fock::in_sector(N, m2)) continue;
    if (energy_equal(m1, m2)) out.emplace_back(m1, m2);
  }
  return out;
}

// ---- non-degenerate first order -----------------------------------------

struct FirstOrderCorrection {
  int m0 = 0;
  std::map<int, complexd> a;  // a_{m0,m} for coupled m != m0
  bool breakdown_warning = false;  // max |a| beyond the smallness budget

  double max_abs() const {
    double v = 0.0;
    for (auto& [m, c] : a) v = std::max(v, std::abs(c));
    return v;
  }
};

// a_{m0,m} = <N,m|H~'|N,m0> / (E_{m0} - E_m) over the coupling band.
inline FirstOrderCorrection first_order_coefficients(const PerturbationKind& kind,
                                                     const model::ModelParams& p, int m0) {
  if (!fock::in_sector(p.N, m0)) fail(errc::invalid_basis, "m0 outside sector");
  FirstOrderCorrection out;
  out.m0 = m0;
  const double E0 = model::energy(p.A1, p.A2, m0);
  for (int dm : {-4, -2, 2, 4}) {
    const int m = m0 + dm;
    if (!fock::in_sector(p.N, m)) continue;
    const complexd el = matrix_element(kind, p.theta, p.phi, p.N, m, m0);
    if (el == complexd(0.0, 0.0)) continue;
    const double Em = model::energy(p.A1, p.A2, m);
    const double gap = E0 - Em;
    if (std::abs(gap) <= 1e-9 * std::max({1.0, std::abs(E0), std::abs(Em)}))
      fail(errc::degenerate_state, "degenerate level coupled to m0; use the degenerate solver");
    out.a[m] = el / gap;
  }
  out.breakdown_warning = out.max_abs() > kSmallnessBudget;
  return out;
}

// P^{(0+1)}(m) = |d_{m,m0}|^2 + 2 d_{m,m0} sum_n Re(a_{m0,n}) d_{m,n};
// values may go negative at first order and are preserved as-is.
inline wigner::DistributionSeries perturbed_distribution(const PerturbationKind& kind,
                                                         const model::ModelParams& p, int m0) {
  auto corr = first_order_coefficients(kind, p, m0);
  wigner::DistributionSeries out = wigner::distribution(p.N, m0, p.theta);
  out.phi = p.phi;
  out.p1.assign(out.p0.size(), 0.0);
  for (auto& [n, an] : corr.a) {
    const double re = an.real();
    if (re == 0.0) continue;
    for (std::size_t i = 0; i < out.m_values.size(); ++i) {
      const int m = out.m_values[i];
      const double d0 = wigner::wigner_d(p.N, m, m0, p.theta);
      out.p1[i] += 2.0 * d0 * re * wigner::wigner_d(p.N, m, n, p.theta);
    }
  }
  return out;
}

// ---- degenerate 2x2 theory ------------------------------------------------

struct DegenerateSolution {
  double eps_plus = 0.0;
  double eps_minus = 0.0;
  Eigen::Vector2cd vec_plus;   // components on (|N,m2>, |N,m1>) = (lower, upper)
  Eigen::Vector2cd vec_minus;
};

// Closed forms for the pair (N, N-2) at phi = 0.
//   omega: eps/delta = (N-1) cos t +- sqrt(N - (N-1)cos^2 t)
//   lambda: same with cos -> sin.
inline DegenerateSolution degenerate_solve(Kind kind, double theta, int N, double delta) {
  if (kind != Kind::Omega && kind != Kind::LambdaSmall)
    fail(errc::unsupported_parameters, "closed form covers the omega and lambda kinds");
  if (N < 2) fail(errc::invalid_basis, "pair (N, N-2) needs N >= 2");
  DegenerateSolution out;
  const double c = std::cos(theta), s = std::sin(theta);
  if (kind == Kind::Omega) {
    const double R = std::sqrt(double(N) - (N - 1.0) * c * c);
    out.eps_plus = delta * ((N - 1.0) * c + R);
    out.eps_minus = delta * ((N - 1.0) * c - R);
    // off-diagonal -delta sin(t) sqrt(N): eigenvector (sqrt(N) s, -(c +- R))
    Eigen::Vector2d vp(std::sqrt(double(N)) * s, -(c + R));
    Eigen::Vector2d vm(std::sqrt(double(N)) * s, -(c - R));
    if (vp.norm() == 0.0) vp << 0.0, 1.0;
    if (vm.norm() == 0.0) vm << 1.0, 0.0;
    out.vec_plus = (vp / vp.norm()).cast<complexd>();
    out.vec_minus = (vm / vm.norm()).cast<complexd>();
  } else {
    const double R = std::sqrt(double(N) - (N - 1.0) * s * s);
    out.eps_plus = delta * ((N - 1.0) * s + R);
    out.eps_minus = delta * ((N - 1.0) * s - R);
    // off-diagonal +delta cos(t) sqrt(N): eigenvector (sqrt(N) c, s +- R)
    Eigen::Vector2d vp(std::sqrt(double(N)) * c, s + R);
    Eigen::Vector2d vm(std::sqrt(double(N)) * c, s - R);
    if (vp.norm() == 0.0) vp << 0.0, 1.0;
    if (vm.norm() == 0.0) vm << 1.0, 0.0;
    out.vec_plus = (vp / vp.norm()).cast<complexd>();
    out.vec_minus = (vm / vm.norm()).cast<complexd>();
  }
  return out;
}

// Numeric eigensolve of the 2x2 block <m_i|H~'|m_j> for any kind and any
// detected pair.
inline DegenerateSolution degenerate_solve_general(const PerturbationKind& kind,
                                                   const model::ModelParams& p,
                                                   std::pair<int, int> pair) {
  const auto [m1, m2] = pair;  // m1 > m2
  if (!fock::in_sector(p.N, m1) || !fock::in_sector(p.N, m2))
    fail(errc::invalid_basis, "pair outside sector");
  if (std::abs(model::energy(p.A1, p.A2, m1) - model::energy(p.A1, p.A2, m2)) >
      1e-9 * std::max(1.0, std::abs(model::energy(p.A1, p.A2, m1))))
    fail(errc::not_degenerate, "pair is not degenerate under (A1, A2)");
  Eigen::Matrix2cd blk;
  const int basis[2] = {m2, m1};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      blk(i, j) = matrix_element(kind, p.theta, p.phi, p.N, basis[i], basis[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(blk);
  DegenerateSolution out;
  out.eps_minus = es.eigenvalues()(0);
  out.eps_plus = es.eigenvalues()(1);
  out.vec_minus = es.eigenvectors().col(0);
  out.vec_plus = es.eigenvectors().col(1);
  return out;
}

}  // namespace bec2::perturb
