#pragma once

// The solvable two-mode Hamiltonian pair: diagonal H0 = A1 m + A2 m^2, the
// six-coupling H2, the displacement unitary relating them, and ground-state
// selection.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "bec2/errors.hpp"
#include "bec2/fock.hpp"
#include "bec2/oracle.hpp"

namespace bec2::model {

using complexd = std::complex<double>;

struct ModelParams {
  double A0 = 0.0;
  double A1 = 0.0;
  double A2 = 1.0;  // conventional normalization
  double theta = 0.0;
  double phi = 0.0;
  int N = 0;
};

struct CouplingSet {
  double A0 = 0.0;
  double omega = 0.0;
  double lambda = 0.0;
  double U_elastic = 0.0;
  double Lambda_exchange = 0.0;
  double mu = 0.0;
};

// A0 = A2(N^2 cos^2 + N sin^2), omega = A1 cos, lambda = A1 sin,
// U = 2 A2 (1 - 3 cos^2), Lambda = A2 sin^2, mu = 2 A2 cos sin.
inline CouplingSet couplings_from_constraints(const ModelParams& p) {
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  CouplingSet out;
  out.A0 = p.A2 * (double(p.N) * p.N * c * c + double(p.N) * s * s);
  out.omega = p.A1 * c;
  out.lambda = p.A1 * s;
  out.U_elastic = 2.0 * p.A2 * (1.0 - 3.0 * c * c);
  out.Lambda_exchange = p.A2 * s * s;
  out.mu = 2.0 * p.A2 * c * s;
  return out;
}

inline double energy(double A1, double A2, int m) { return A1 * m + A2 * double(m) * m; }

// Minimizer of E_m over the allowed ladder.  Tie at an exact midpoint picks
// the smaller m.
inline int ground_state_m0(double A1, double A2, int N) {
  if (N < 0) fail(errc::invalid_basis, "negative particle number");
  if (A2 < 0.0) {
    if (A1 == 0.0) fail(errc::ambiguous_minimum, "A2<0, A1=0: both +-N minimize");
    return A1 < 0.0 ? N : -N;
  }
  if (A2 == 0.0) {
    if (A1 == 0.0) fail(errc::ambiguous_minimum, "flat spectrum");
    return A1 > 0.0 ? -N : N;
  }
  const double x = -A1 / (2.0 * A2);
  if (std::abs(x) > N) return A1 > 0.0 ? -N : N;
  // nearest allowed integer (same parity as N), smaller one on a tie
  double best = 0.0;
  int best_m = -N - 2;
  for (int m = -N; m <= N; m += 2) {
    const double d = std::abs(m - x);
    if (best_m < -N || d < best - 1e-15) {
      best = d;
      best_m = m;
    }
  }
  return best_m;
}

inline Eigen::MatrixXcd build_h0(const ModelParams& p) {
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(p.N + 1, p.N + 1);
  for (int m = -p.N; m <= p.N; m += 2)
    H(fock::sector_index(p.N, m), fock::sector_index(p.N, m)) = energy(p.A1, p.A2, m);
  return H;
}

// H2 assembled term by term from ladder monomials (analytic route; the
// spectral-exponential conjugation below is the independent one).
inline Eigen::MatrixXcd build_h2(const CouplingSet& cset, double phi, int N) {
  using fock::MonomialOp;
  using fock::build_operator_matrix;
  const complexd w = std::exp(complexd(0.0, phi));
  const auto I = Eigen::MatrixXcd::Identity(N + 1, N + 1);
  Eigen::MatrixXcd Jp = build_operator_matrix(MonomialOp::from_powers(1, 0, 0, 1), N);
  Eigen::MatrixXcd Jm = build_operator_matrix(MonomialOp::from_powers(0, 1, 1, 0), N);
  Eigen::MatrixXcd na = build_operator_matrix(MonomialOp::from_powers(1, 0, 1, 0), N);
  Eigen::MatrixXcd nb = build_operator_matrix(MonomialOp::from_powers(0, 1, 0, 1), N);
  Eigen::MatrixXcd nanb = build_operator_matrix(MonomialOp::from_powers(1, 1, 1, 1), N);
  Eigen::MatrixXcd lam2 = build_operator_matrix(MonomialOp::from_powers(2, 0, 0, 2), N);
  Eigen::MatrixXcd mu1 = build_operator_matrix(MonomialOp::from_powers(2, 0, 1, 1), N);
  Eigen::MatrixXcd mu2 = build_operator_matrix(MonomialOp::from_powers(1, 1, 0, 2), N);

  Eigen::MatrixXcd H = cset.A0 * I + cset.omega * (na - nb);
  H += cset.lambda * (w * Jp + std::conj(w) * Jm);
  H += cset.U_elastic * nanb;
  H += cset.Lambda_exchange * (w * w * lam2 + Eigen::MatrixXcd(std::conj(w * w) * lam2.adjoint()));
  Eigen::MatrixXcd muterm = mu1 - mu2;
  H += cset.mu * (w * muterm + Eigen::MatrixXcd(std::conj(w) * muterm.adjoint()));
  return H;
}

// U(xi) = exp(xi a^dag b - xi* a b^dag) on H_N, xi = theta/2 e^{i phi}.
inline Eigen::MatrixXcd displacement_unitary(double theta, double phi, int N) {
  if (N < 0) fail(errc::invalid_basis, "negative particle number");
  return oracle::detail::displacement_unitary_dense(theta, phi, N);
}

}  // namespace bec2::model
