#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bec2/model.hpp"
#include "bec2/oracle.hpp"

using namespace bec2;
using model::ModelParams;

TEST_CASE("constraint map at the axis angles") {
  {
    ModelParams p{0, 2.0, 1.0, 0.0, 0.0, 4};
    auto c = model::couplings_from_constraints(p);
    CHECK(c.A0 == Catch::Approx(16.0));
    CHECK(c.omega == Catch::Approx(2.0));
    CHECK(c.lambda == Catch::Approx(0.0).margin(1e-15));
    CHECK(c.U_elastic == Catch::Approx(-4.0));
    CHECK(c.Lambda_exchange == Catch::Approx(0.0).margin(1e-15));
    CHECK(c.mu == Catch::Approx(0.0).margin(1e-15));
  }
  {
    ModelParams p{0, 2.0, 1.0, M_PI / 2, 0.0, 4};
    auto c = model::couplings_from_constraints(p);
    CHECK(c.A0 == Catch::Approx(4.0));
    CHECK(c.omega == Catch::Approx(0.0).margin(1e-15));
    CHECK(c.lambda == Catch::Approx(2.0));
    CHECK(c.U_elastic == Catch::Approx(2.0));
    CHECK(c.Lambda_exchange == Catch::Approx(1.0));
    CHECK(c.mu == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("energy expression") {
  CHECK(model::energy(3.0, 2.0, 0) == 0.0);
  CHECK(model::energy(1.0, 1.0, 2) == 6.0);
  CHECK(model::energy(-2.0, 1.0, -4) == 24.0);
}

TEST_CASE("ground state selection") {
  CHECK(model::ground_state_m0(-1.0, -1.0, 8) == 8);
  CHECK(model::ground_state_m0(1.0, -1.0, 8) == -8);
  CHECK_THROWS_AS(model::ground_state_m0(0.0, -1.0, 8), Error);
  CHECK(model::ground_state_m0(-4.0, 1.0, 10) == 2);
  CHECK(model::ground_state_m0(50.0, 1.0, 10) == -10);
  // exact midpoint prefers the smaller allowed m: -A1/(2A2) = 1 between 0 and 2
  CHECK(model::ground_state_m0(-2.0, 1.0, 10) == 0);
  // brute-force scan as the oracle
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int N = int(rng() % 13);
    double A1 = u(rng), A2 = std::abs(u(rng)) + 0.05;
    const int got = model::ground_state_m0(A1, A2, N);
    double best = 1e300;
    int want = 0;
    for (int m = -N; m <= N; m += 2) {
      const double e = model::energy(A1, A2, m);
      if (e < best - 1e-12) {
        best = e;
        want = m;
      }
    }
    CHECK(model::energy(A1, A2, got) == Catch::Approx(model::energy(A1, A2, want)).margin(1e-9));
  }
}

TEST_CASE("diagonal Hamiltonian") {
  {
    ModelParams p{0, 0.0, 1.0, 0, 0, 2};
    auto H = model::build_h0(p);
    CHECK(std::real(H(0, 0)) == 4.0);
    CHECK(std::real(H(1, 1)) == 0.0);
    CHECK(std::real(H(2, 2)) == 4.0);
  }
  {
    ModelParams p{0, 1.0, 0.0, 0, 0, 4};
    auto H = model::build_h0(p);
    for (int i = 0; i <= 4; ++i) CHECK(std::real(H(i, i)) == -4.0 + 2.0 * i);
  }
  {
    ModelParams p{0, 2.0, 3.0, 0, 0, 6};
    auto H = model::build_h0(p);
    for (int m = -6; m <= 6; m += 2)
      CHECK(std::real(H(fock::sector_index(6, m), fock::sector_index(6, m))) ==
            Catch::Approx(model::energy(2.0, 3.0, m)));
  }
}

TEST_CASE("H2 simple assemblies") {
  model::CouplingSet only_a0;
  only_a0.A0 = 3.5;
  auto H = model::build_h2(only_a0, 0.7, 5);
  CHECK((H - 3.5 * Eigen::MatrixXcd::Identity(6, 6)).norm() == Catch::Approx(0.0).margin(1e-14));

  model::CouplingSet only_lambda;
  only_lambda.lambda = 2.0;
  auto H1 = model::build_h2(only_lambda, 0.4, 1);
  CHECK(std::abs(H1(1, 0) - 2.0 * std::exp(std::complex<double>(0, 0.4))) < 1e-14);
  CHECK(std::abs(H1(0, 1) - 2.0 * std::exp(std::complex<double>(0, -0.4))) < 1e-14);
  CHECK(std::abs(H1(0, 0)) < 1e-14);
}

TEST_CASE("central identity H2 = Udag H0 U and its consequences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0), th(0.05, M_PI - 0.05),
      ph(0.0, 2 * M_PI);
  for (int trial = 0; trial < 25; ++trial) {
    const int N = 1 + int(rng() % 20);
    ModelParams p{0, u(rng), u(rng), th(rng), ph(rng), N};
    auto U = model::displacement_unitary(p.theta, p.phi, N);
    auto H0 = model::build_h0(p);
    auto H2 = model::build_h2(model::couplings_from_constraints(p), p.phi, N);
    CHECK((H2 - U.adjoint() * H0 * U).norm() / std::max(1e-30, H0.norm()) < 1e-10);
  }
  // spectrum preservation and eigenvector identity at a fixed configuration
  ModelParams p{0, 2.0, 1.0, 1.0, 0.3, 8};
  auto U = model::displacement_unitary(p.theta, p.phi, 8);
  auto H2 = model::build_h2(model::couplings_from_constraints(p), p.phi, 8);
  oracle::SectorOperator op(H2, 8, 8);
  auto [vals, vecs] = oracle::exact_eigensystem(op);
  std::vector<double> expect;
  for (int m = -8; m <= 8; m += 2) expect.push_back(model::energy(p.A1, p.A2, m));
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i <= 8; ++i) CHECK(vals(i) == Catch::Approx(expect[i]).margin(1e-10));
  for (int m = -8; m <= 8; m += 2) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(9);
    e(fock::sector_index(8, m)) = 1.0;
    Eigen::VectorXcd v = U.adjoint() * e;
    CHECK((H2 * v - model::energy(p.A1, p.A2, m) * v).norm() < 1e-9);
  }
}

TEST_CASE("displacement unitary properties") {
  CHECK((model::displacement_unitary(0.0, 1.2, 7) - Eigen::MatrixXcd::Identity(8, 8)).norm() <
        1e-13);
  // single-particle block of the mode transform
  const double theta = 0.9, phi = 0.6;
  auto U1 = model::displacement_unitary(theta, phi, 1);
  // basis (|1,-1> = b^dag|0>, |1,1> = a^dag|0>); U a^dag U^dag = c a^dag - e^{-i phi} s b^dag
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  CHECK(std::abs(U1(1, 1) - c) < 1e-12);
  CHECK(std::abs(U1(0, 1) + std::exp(std::complex<double>(0, -phi)) * s) < 1e-12);
  CHECK(std::abs(U1(0, 0) - c) < 1e-12);
  CHECK(std::abs(U1(1, 0) - std::exp(std::complex<double>(0, phi)) * s) < 1e-12);
  for (int N : {4, 17, 40}) {
    auto U = model::displacement_unitary(1.1, 0.5, N);
    CHECK((U * U.adjoint() - Eigen::MatrixXcd::Identity(N + 1, N + 1)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("mode transform rows (Bogoliubov check)") {
  // Udag a U = cos(t/2) a + e^{i phi} sin(t/2) b as sector maps H_N -> H_{N-1}
  const int N = 9;
  const double theta = 0.8, phi = 1.1;
  auto A = fock::build_operator_matrix(fock::MonomialOp::from_powers(0, 0, 1, 0), N);
  auto B = fock::build_operator_matrix(fock::MonomialOp::from_powers(0, 0, 0, 1), N);
  auto UN = model::displacement_unitary(theta, phi, N);
  auto UNm1 = model::displacement_unitary(theta, phi, N - 1);
  Eigen::MatrixXcd lhs = UNm1.adjoint() * A * UN;
  Eigen::MatrixXcd rhs = std::cos(theta / 2) * A +
                         std::exp(std::complex<double>(0, phi)) * std::sin(theta / 2) * B;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  // theta -> -theta gives the inverse transform
  auto UNr = model::displacement_unitary(-theta, phi, N);
  auto UNm1r = model::displacement_unitary(-theta, phi, N - 1);
  Eigen::MatrixXcd lhs2 = UNm1r.adjoint() * A * UNr;
  Eigen::MatrixXcd rhs2 = std::cos(theta / 2) * A -
                          std::exp(std::complex<double>(0, phi)) * std::sin(theta / 2) * B;
  CHECK((lhs2 - rhs2).cwiseAbs().maxCoeff() < 1e-10);
}
