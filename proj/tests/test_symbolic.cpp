#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "bec2/fock.hpp"
#include "bec2/oracle.hpp"
#include "bec2/symbolic.hpp"

using namespace bec2;
using namespace bec2::symbolic;

namespace {

// numeric value of a ring coefficient at concrete (theta, phi, A)
std::complex<double> eval_coeff(const Coeff& c, double theta, double phi,
                                const std::vector<double>& A) {
  std::complex<double> out(0.0, 0.0);
  const double ch = std::cos(theta / 2), sh = std::sin(theta / 2);
  for (auto& [k, r] : c) {
    double v = double(r.num) / double(r.den);
    v *= std::pow(ch, k.c_pow) * std::pow(sh, k.s_pow);
    if (k.a_idx >= 0) v *= A.at(k.a_idx);
    out += v * std::exp(std::complex<double>(0.0, phi * k.w_pow));
  }
  return out;
}

// dense sector matrix of a symbolic polynomial at concrete parameters
Eigen::MatrixXcd to_matrix(const BosonPolynomial& P, int N, double theta, double phi,
                           const std::vector<double>& A) {
  const int cap = N + 8;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  for (auto& [m, c] : P.terms) {
    if (m.p + m.q - m.r - m.s != 0) continue;  // only the number-conserving block
    auto mat = fock::build_operator_matrix(
        fock::MonomialOp::from_powers(m.p, m.q, m.r, m.s), N);
    M += eval_coeff(c, theta, phi, A) * mat;
  }
  (void)cap;
  return M;
}

}  // namespace

TEST_CASE("canonical commutator") {
  auto p = normal_order({Factor::a, Factor::a_dag}, coeff_one());
  REQUIRE(p.terms.size() == 2);
  CHECK(p.terms.count(Mono{1, 0, 1, 0}) == 1);
  CHECK(p.terms.count(Mono{0, 0, 0, 0}) == 1);
  CHECK(p.terms.at(Mono{0, 0, 0, 0}).at(CoeffKey{}) == Rational(1));
  // already-normal input is unchanged, and normal_order is idempotent
  auto q = normal_order({Factor::a_dag, Factor::a}, coeff_one());
  REQUIRE(q.terms.size() == 1);
  auto qq = normal_order(q);
  CHECK(qq.terms == q.terms);
}

TEST_CASE("squared relative number matches its sector matrices") {
  auto m2 = mul(m_hat(), m_hat());
  for (int N : {2, 4, 6}) {
    auto M = to_matrix(m2, N, 0.0, 0.0, {});
    for (int m = -N; m <= N; m += 2)
      CHECK(std::real(M(fock::sector_index(N, m), fock::sector_index(N, m))) ==
            Catch::Approx(double(m) * m).margin(1e-12));
  }
}

TEST_CASE("conjugation preserves the total number operator") {
  BosonPolynomial Nhat;
  Nhat.add(Mono{1, 0, 1, 0}, coeff_one());
  Nhat.add(Mono{0, 1, 0, 1}, coeff_one());
  auto conj = conjugate_by_displacement(Nhat);
  REQUIRE(conj.terms.size() == 2);
  CHECK(conj.terms.at(Mono{1, 0, 1, 0}).at(CoeffKey{}) == Rational(1));
  CHECK(conj.terms.at(Mono{0, 1, 0, 1}).at(CoeffKey{}) == Rational(1));
}

TEST_CASE("conjugated m-hat carries the omega and lambda rows") {
  auto conj = conjugate_by_displacement(m_hat());
  // a^dag a coefficient: c^2 - s^2 = cos(theta)
  const double theta = 0.77;
  auto caa = eval_coeff(conj.terms.at(Mono{1, 0, 1, 0}), theta, 0.3, {});
  CHECK(std::abs(caa - std::cos(theta)) < 1e-14);
  auto cbb = eval_coeff(conj.terms.at(Mono{0, 1, 0, 1}), theta, 0.3, {});
  CHECK(std::abs(cbb + std::cos(theta)) < 1e-14);
  // a^dag b coefficient: e^{i phi} sin(theta) (the U^dag m U direction)
  auto cab = eval_coeff(conj.terms.at(Mono{1, 0, 0, 1}), theta, 0.3, {});
  CHECK(std::abs(cab - std::sin(theta) * std::exp(std::complex<double>(0, 0.3))) < 1e-14);
  // reverse direction flips the exchange sign
  auto rev = conjugate_by_displacement(m_hat(), true);
  auto cab2 = eval_coeff(rev.terms.at(Mono{1, 0, 0, 1}), theta, 0.3, {});
  CHECK(std::abs(cab2 + std::sin(theta) * std::exp(std::complex<double>(0, 0.3))) < 1e-14);
}

TEST_CASE("conjugated m-hat squared reproduces the constraint couplings") {
  auto m2 = mul(m_hat(), m_hat());
  auto conj = conjugate_by_displacement(m2);
  const double theta = 1.1;
  // U^dag m^2 U : coefficient of a^dag a b^dag b is 2(1 - 3cos^2) + 4cos^2 - 2
  //   (after folding a^dag a^dag a a via the sector identity); check the raw
  //   monomials instead against direct numeric conjugation
  for (int N : {3, 5}) {
    auto M = to_matrix(conj, N, theta, 0.4, {});
    auto U = oracle::detail::displacement_unitary_dense(theta, 0.4, N);
    Eigen::MatrixXcd md = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int m = -N; m <= N; m += 2)
      md(fock::sector_index(N, m), fock::sector_index(N, m)) = double(m) * m;
    CHECK((M - U.adjoint() * md * U).cwiseAbs().maxCoeff() < 1e-12);
  }
  // exchange-pair coefficient Lambda = A2 sin^2(theta) on a^dag a^dag b b
  auto lam = eval_coeff(conj.terms.at(Mono{2, 0, 0, 2}), theta, 0.0, {});
  CHECK(std::abs(lam - std::sin(theta) * std::sin(theta)) < 1e-14);
}

TEST_CASE("hermiticity and degree are preserved") {
  auto m3 = mul(mul(m_hat(), m_hat()), m_hat());
  CHECK(m3.is_hermitian());
  auto conj = conjugate_by_displacement(m3);
  CHECK(conj.is_hermitian());
  int deg = 0;
  for (auto& [m, c] : conj.terms) deg = std::max(deg, m.degree());
  CHECK(deg == 6);
}

TEST_CASE("homogeneous term count") {
  CHECK(count_general_terms(0) == 1);
  CHECK(count_general_terms(2) == 3);
  CHECK_THROWS_AS(count_general_terms(3), Error);
  for (int deg = 0; deg <= 20; deg += 2)
    CHECK(count_general_terms(deg) == enumerate_general_terms(deg));
}

TEST_CASE("cumulative counts under both indexings") {
  CHECK(count_general_cumulative(0) == 1);
  CHECK(count_general_cumulative(2) == 10);
  CHECK(count_general_cumulative(3) == 20);
  for (int n = 0; n <= 8; ++n)
    CHECK(count_general_cumulative_by_body_count(n) == count_general_cumulative_by_degree(2 * n));
}

TEST_CASE("displaced n-model term counts") {
  CHECK(count_n_model_terms(0) == 1);
  CHECK(count_n_model_terms(1) == 3);
  CHECK(count_n_model_terms(2) == 6);
  CHECK(count_n_model_terms(3) == 13);
  const long long general[4] = {1, 4, 10, 20};
  const long long missed[4] = {0, 1, 4, 7};
  for (int n = 0; n <= 3; ++n)
    CHECK(count_general_cumulative(n) - count_n_model_terms(n) == missed[n]);
  (void)general;
  // computed regression pins beyond the published rows
  CHECK(count_n_model_terms(4) == 23);
  CHECK(count_n_model_terms(5) == 41);
  CHECK_THROWS_AS(count_n_model_terms(6), Error);
  CHECK_THROWS_AS(count_n_model_terms(-1), Error);
}
