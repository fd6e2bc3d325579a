#pragma once

// von Neumann entanglement entropy of |psi> = U^dag|N,m0> across the two
// modes, S = -sum P log2 P, and its linearized first-order shift
// S^(0+1) = S^(0) - sum P1 (log2 P0 + 1/ln 2).

#include <cmath>
#include <vector>

#include "bec2/errors.hpp"
#include "bec2/wigner.hpp"

namespace bec2::entangle {

// terms with P0 below this are dropped (the p log p limit vanishes)
inline constexpr double kZeroFloor = 1e-300;

struct EntropyResult {
  double S0 = 0.0;        // bits
  double S1_shift = 0.0;  // signed first-order change, bits
  bool increased = false;
};

inline double entropy(const std::vector<double>& P) {
  double S = 0.0;
  for (double p : P) {
    if (p < 0.0) fail(errc::negative_probability, "clamp negative entries before the entropy");
    if (p < kZeroFloor) continue;
    S -= p * std::log2(p);
  }
  return S;
}

inline double entropy(const wigner::DistributionSeries& series) {
  if (series.p1.empty()) return entropy(series.p0);
  // non-linearized path: |P^(0+1)| per the sign convention for first-order
  // distributions
  std::vector<double> tot = series.total();
  for (double& v : tot) v = std::abs(v);
  return entropy(tot);
}

inline EntropyResult entropy_first_order(const std::vector<double>& P0,
                                         const std::vector<double>& P1) {
  if (P0.size() != P1.size()) fail(errc::invalid_state, "series length mismatch");
  EntropyResult out;
  out.S0 = entropy(P0);
  double shift = 0.0;
  for (std::size_t i = 0; i < P0.size(); ++i) {
    if (P0[i] < kZeroFloor) continue;  // vanishing-P0 terms contribute nothing at first order
    shift -= P1[i] * (std::log2(P0[i]) + 1.0 / std::log(2.0));
  }
  out.S1_shift = shift;
  out.increased = shift > 0.0;
  return out;
}

inline EntropyResult entropy_first_order(const wigner::DistributionSeries& series) {
  if (series.p1.empty()) fail(errc::invalid_state, "series carries no first-order part");
  return entropy_first_order(series.p0, series.p1);
}

}  // namespace bec2::entangle
