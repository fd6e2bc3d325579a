#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bec2/entangle.hpp"
#include "bec2/perturb.hpp"

using namespace bec2;

namespace {
double a1_for_m0(int m0, double A2 = 1.0) { return -2.0 * A2 * m0; }
}

TEST_CASE("entropy basics") {
  CHECK(entangle::entropy(std::vector<double>{0.0, 1.0, 0.0}) == 0.0);
  CHECK(entangle::entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == Catch::Approx(2.0));
  CHECK_THROWS_AS(entangle::entropy(std::vector<double>{0.5, -0.1, 0.6}), Error);
}

TEST_CASE("entropy bounds over random distributions") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> th(0.05, M_PI - 0.05);
  for (int trial = 0; trial < 12; ++trial) {
    const int N = 1 + int(rng() % 60);
    const auto ms = fock::allowed_m(N);
    const int m0 = ms[rng() % ms.size()];
    auto series = wigner::distribution(N, m0, th(rng));
    const double S = entangle::entropy(series.p0);
    CHECK(S >= 0.0);
    CHECK(S <= std::log2(double(N + 1)) + 1e-12);
  }
}

TEST_CASE("first-order shift") {
  std::vector<double> P0{0.5, 0.3, 0.2};
  std::vector<double> zero(3, 0.0);
  auto res = entangle::entropy_first_order(P0, zero);
  CHECK(res.S1_shift == 0.0);
  CHECK_FALSE(res.increased);

  std::vector<double> P1{0.01, -0.004, -0.006};
  auto a = entangle::entropy_first_order(P0, P1);
  std::vector<double> P1n{-0.01, 0.004, 0.006};
  auto b = entangle::entropy_first_order(P0, P1n);
  CHECK(a.S1_shift == Catch::Approx(-b.S1_shift));
  CHECK(a.increased != b.increased);
}

TEST_CASE("linearized shift converges quadratically to the exact entropy change") {
  model::ModelParams p{0, a1_for_m0(6), 1.0, 0.9, 0.0, 20};
  double prev = -1.0;
  for (double delta : {0.02, 0.01, 0.005}) {
    perturb::PerturbationKind pk{perturb::Kind::LambdaBig, delta};
    auto series = perturb::perturbed_distribution(pk, p, 6);
    auto lin = entangle::entropy_first_order(series);
    auto tot = series.total();
    for (double& v : tot) v = std::abs(v);
    const double exact = entangle::entropy(tot);
    const double disc = std::abs(exact - (lin.S0 + lin.S1_shift));
    if (prev >= 0.0) CHECK(disc < 0.35 * prev);  // ~quarter per halving
    prev = disc;
  }
}

TEST_CASE("coherent states dominate the shift for omega and lambda") {
  const int N = 100;
  const double theta = 1.0, delta = 0.002;
  for (auto kind : {perturb::Kind::Omega, perturb::Kind::LambdaSmall}) {
    double edge = 0.0, center = 0.0;
    for (int m0 : {-N, 0, N}) {
      model::ModelParams p{0, a1_for_m0(m0), 1.0, theta, 0.0, N};
      auto series = perturb::perturbed_distribution({kind, delta}, p, m0);
      const double dS = std::abs(entangle::entropy_first_order(series).S1_shift);
      if (m0 == 0) center = dS;
      else edge = std::max(edge, dS);
    }
    CHECK(edge > center);
  }
}

TEST_CASE("collision kinds shift the entropy far more than omega/lambda") {
  const int N = 100;
  const double theta = 1.0, delta = 0.002;
  const int m0 = N;
  model::ModelParams p{0, a1_for_m0(m0), 1.0, theta, 0.0, N};
  std::map<perturb::Kind, double> dS;
  for (auto kind : {perturb::Kind::Omega, perturb::Kind::LambdaSmall, perturb::Kind::Uelastic,
                    perturb::Kind::LambdaBig, perturb::Kind::Mu}) {
    auto series = perturb::perturbed_distribution({kind, delta}, p, m0);
    dS[kind] = std::abs(entangle::entropy_first_order(series).S1_shift);
  }
  const double weak = std::max(dS[perturb::Kind::Omega], dS[perturb::Kind::LambdaSmall]);
  CHECK(dS[perturb::Kind::Uelastic] > weak);
  CHECK(dS[perturb::Kind::LambdaBig] > weak);
  CHECK(dS[perturb::Kind::Mu] > weak);
}
