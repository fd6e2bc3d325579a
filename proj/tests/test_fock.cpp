#include <catch2/catch_amalgamated.hpp>

#include "bec2/fock.hpp"
#include "bec2/oracle.hpp"

using namespace bec2;
using fock::FockLabel;
using fock::MonomialOp;

TEST_CASE("allowed_m enumerates the parity ladder") {
  CHECK(fock::allowed_m(0) == std::vector<int>{0});
  CHECK(fock::allowed_m(1) == std::vector<int>{-1, 1});
  CHECK(fock::allowed_m(2) == std::vector<int>{-2, 0, 2});
  CHECK(fock::allowed_m(7).size() == 8);
  CHECK_THROWS_AS(fock::allowed_m(-1), Error);
}

TEST_CASE("labels validate parity and range") {
  CHECK(FockLabel(6, 4).n_a() == 5);
  CHECK(FockLabel(6, 4).n_b() == 1);
  CHECK_THROWS_AS(FockLabel(6, 3), Error);
  CHECK_THROWS_AS(FockLabel(6, 8), Error);
  CHECK_THROWS_AS(FockLabel(-2, 0), Error);
}

TEST_CASE("exchange ladders") {
  auto [c, l] = fock::apply_exchange_raise(FockLabel(2, 0));
  CHECK(c == Catch::Approx(std::sqrt(2.0)));
  REQUIRE(l.has_value());
  CHECK(l->m == 2);

  auto [c2, l2] = fock::apply_exchange_raise(FockLabel(2, 2));
  CHECK(c2 == 0.0);
  CHECK_FALSE(l2.has_value());

  auto [c3, l3] = fock::apply_exchange_lower(FockLabel(2, 0));
  CHECK(c3 == Catch::Approx(std::sqrt(2.0)));
  REQUIRE(l3.has_value());
  CHECK(l3->m == -2);
  CHECK(fock::apply_exchange_lower(FockLabel(2, -2)).first == 0.0);

  // entries of the dense matrices reproduce the ladder coefficients
  auto Jp = fock::build_operator_matrix(MonomialOp::from_powers(1, 0, 0, 1), 10);
  auto [cr, lr] = fock::apply_exchange_raise(FockLabel(10, -4));
  CHECK(std::abs(Jp(fock::sector_index(10, -2), fock::sector_index(10, -4))) ==
        Catch::Approx(cr));
  auto Jm = fock::build_operator_matrix(MonomialOp::from_powers(0, 1, 1, 0), 10);
  auto [cl, ll] = fock::apply_exchange_lower(FockLabel(10, 4));
  CHECK(std::abs(Jm(fock::sector_index(10, 2), fock::sector_index(10, 4))) == Catch::Approx(cl));
}

TEST_CASE("raise then lower returns with the advertised coefficient product") {
  for (int N : {3, 8, 13}) {
    for (int m = -N; m <= N; m += 2) {
      auto [cr, lr] = fock::apply_exchange_raise(FockLabel(N, m));
      if (!lr) continue;
      auto [cl, ll] = fock::apply_exchange_lower(*lr);
      REQUIRE(ll.has_value());
      CHECK(ll->m == m);
      CHECK(cr * cl ==
            Catch::Approx(0.25 * (double(N) * (N + 2) - double(m) * (m + 2))).margin(1e-12));
    }
  }
}

TEST_CASE("build_operator_matrix basics") {
  auto I = fock::build_operator_matrix(MonomialOp::from_powers(0, 0, 0, 0), 5);
  CHECK((I - Eigen::MatrixXcd::Identity(6, 6)).norm() == Catch::Approx(0.0).margin(1e-15));

  auto na = fock::build_operator_matrix(MonomialOp::from_powers(1, 0, 1, 0), 4);
  auto nb = fock::build_operator_matrix(MonomialOp::from_powers(0, 1, 0, 1), 4);
  Eigen::MatrixXcd md = na - nb;
  for (int m = -4; m <= 4; m += 2)
    CHECK(std::real(md(fock::sector_index(4, m), fock::sector_index(4, m))) ==
          Catch::Approx(double(m)));

  auto nanb = fock::build_operator_matrix(MonomialOp::from_powers(1, 1, 1, 1), 6);
  for (int m = -6; m <= 6; m += 2) {
    const double expect = ((6 + m) / 2) * ((6 - m) / 2);
    CHECK(std::real(nanb(fock::sector_index(6, m), fock::sector_index(6, m))) ==
          Catch::Approx(expect));
  }

  // a^dag b is the adjoint of a b^dag sector by sector
  for (int N : {1, 5, 9}) {
    auto Jp = fock::build_operator_matrix(MonomialOp::from_powers(1, 0, 0, 1), N);
    auto Jm = fock::build_operator_matrix(MonomialOp::from_powers(0, 1, 1, 0), N);
    CHECK((Jp - Jm.adjoint()).norm() == Catch::Approx(0.0).margin(1e-12));
    Eigen::MatrixXcd tot = fock::build_operator_matrix(MonomialOp::from_powers(1, 0, 1, 0), N) +
                           fock::build_operator_matrix(MonomialOp::from_powers(0, 1, 0, 1), N);
    CHECK((tot - double(N) * Eigen::MatrixXcd::Identity(N + 1, N + 1)).norm() ==
          Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("loss monomials map between sectors") {
  auto A2 = fock::build_operator_matrix(MonomialOp::from_powers(0, 0, 2, 0), 6);
  CHECK(A2.rows() == 5);  // codomain H_4
  CHECK(A2.cols() == 7);
  // a^2 |n_a=6, n_b=0> = sqrt(30) |4,0>
  CHECK(std::abs(A2(4, 6)) == Catch::Approx(std::sqrt(30.0)));

  MonomialOp bad;
  bad.factors = {fock::Factor::a, fock::Factor::a_dag};
  CHECK_FALSE(bad.is_normal_ordered());
  CHECK_THROWS_AS(fock::build_operator_matrix(bad, 4), Error);
}
