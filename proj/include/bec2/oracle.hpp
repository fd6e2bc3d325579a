#pragma once

// Brute-force numerical ground truth: dense sector operators, numerically
// exact displacement unitaries, full diagonalization and exact propagation.
// Every analytic path in the library has a test that compares against this
// module.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bec2/errors.hpp"
#include "bec2/fock.hpp"

namespace bec2::oracle {

using complexd = std::complex<double>;

inline constexpr int kDefaultSectorCap = 256;

struct SectorOperator {
  Eigen::MatrixXcd mat;
  int domain_n = 0;
  int codomain_n = 0;

  SectorOperator() = default;
  SectorOperator(Eigen::MatrixXcd m, int dom, int cod)
      : mat(std::move(m)), domain_n(dom), codomain_n(cod) {
    if (mat.rows() != cod + 1 || mat.cols() != dom + 1)
      fail(errc::invalid_operator, "matrix shape does not match sectors");
  }

  bool is_square() const { return domain_n == codomain_n; }
};

inline bool is_hermitian(const Eigen::MatrixXcd& H, double tol = 1e-12) {
  return H.rows() == H.cols() && (H - H.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, H.cwiseAbs().maxCoeff());
}

namespace detail {

// exp(xi J+ - conj(xi) J-) on sector H_N via spectral decomposition of the
// Hermitian generator i(xi J+ - conj(xi) J-).
inline Eigen::MatrixXcd displacement_unitary_dense(double theta, double phi, int N) {
  const complexd xi = 0.5 * theta * std::exp(complexd(0.0, phi));
  auto Jp = fock::build_operator_matrix(fock::MonomialOp::from_powers(1, 0, 0, 1), N);
  auto Jm = fock::build_operator_matrix(fock::MonomialOp::from_powers(0, 1, 1, 0), N);
  Eigen::MatrixXcd G = xi * Jp - std::conj(xi) * Jm;
  Eigen::MatrixXcd H = complexd(0.0, 1.0) * G;  // Hermitian
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd phases(N + 1);
  for (int i = 0; i <= N; ++i)
    phases(i) = std::exp(complexd(0.0, -es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

inline SectorOperator exact_unitary(double theta, double phi, int N,
                                    int cap = kDefaultSectorCap) {
  if (N < 0) fail(errc::invalid_basis, "negative particle number");
  if (N > cap) fail(errc::resource_limit, "sector exceeds oracle cap");
  return SectorOperator(detail::displacement_unitary_dense(theta, phi, N), N, N);
}

inline std::pair<Eigen::VectorXd, Eigen::MatrixXcd> exact_eigensystem(const SectorOperator& H) {
  if (!H.is_square() || !is_hermitian(H.mat, 1e-10))
    fail(errc::invalid_operator, "eigensystem requires a Hermitian sector operator");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.mat);
  return {es.eigenvalues(), es.eigenvectors()};
}

inline Eigen::VectorXcd exact_propagate(const SectorOperator& H, const Eigen::VectorXcd& state,
                                        double t) {
  if (!H.is_square() || !is_hermitian(H.mat, 1e-10))
    fail(errc::invalid_operator, "propagation requires a Hermitian sector operator");
  if (state.size() != H.mat.cols()) fail(errc::invalid_state, "state dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.mat);
  Eigen::VectorXcd coeff = es.eigenvectors().adjoint() * state;
  for (int i = 0; i < coeff.size(); ++i)
    coeff(i) *= std::exp(complexd(0.0, -es.eigenvalues()(i) * t));
  return es.eigenvectors() * coeff;
}

// U op U^dag, blockwise for operators connecting different sectors.
inline SectorOperator conjugate_numeric(const SectorOperator& op, double theta, double phi,
                                        int cap = kDefaultSectorCap) {
  if (op.domain_n > cap || op.codomain_n > cap)
    fail(errc::resource_limit, "sector exceeds oracle cap");
  auto Udom = detail::displacement_unitary_dense(theta, phi, op.domain_n);
  auto Ucod = op.codomain_n == op.domain_n
                  ? Udom
                  : detail::displacement_unitary_dense(theta, phi, op.codomain_n);
  return SectorOperator(Ucod * op.mat * Udom.adjoint(), op.domain_n, op.codomain_n);
}

}  // namespace bec2::oracle
