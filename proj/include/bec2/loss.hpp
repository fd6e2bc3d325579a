#pragma once

// Particle-loss perturbations: the general scalar-coefficient loss term
// sum alpha_{ka,kb} a^{ka} b^{kb} (plus the number-weighted TBR form
// sigma a^dag a a a), the enlarged state space over accessible totals,
// S_A(m) degeneracy analysis, and the first-order generalized particle
// distribution.
//
// States on the enlarged space are kept sector-by-sector: one amplitude
// vector per accessible total.

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "bec2/errors.hpp"
#include "bec2/fock.hpp"
#include "bec2/model.hpp"
#include "bec2/oracle.hpp"
#include "bec2/wigner.hpp"

namespace bec2::loss {

using complexd = std::complex<double>;

struct LossSpec {
  // scalar coefficients alpha_{ka,kb} on a^{ka} b^{kb}
  std::map<std::pair<int, int>, double> alphas;
  // sigma on the number-weighted monomial a^dag a a a (net two-particle
  // loss); the accompanying aaa branch is tracked for the accessible set only
  double tbr_sigma = 0.0;
  bool tbr = false;

  static LossSpec background(const std::map<int, double>& alpha_k) {
    LossSpec spec;
    for (auto& [k, v] : alpha_k) {
      if (k < 1) fail(errc::invalid_state, "loss monomials must annihilate at least one particle");
      if (v != 0.0) spec.alphas[{k, 0}] = v;
    }
    if (spec.alphas.empty()) fail(errc::invalid_state, "loss spec needs a nonzero coefficient");
    return spec;
  }

  static LossSpec general(const std::map<std::pair<int, int>, double>& coeffs) {
    LossSpec spec;
    for (auto& [kk, v] : coeffs) {
      if (kk.first + kk.second < 1)
        fail(errc::invalid_state, "loss monomials must annihilate at least one particle");
      if (kk.first < 0 || kk.second < 0) fail(errc::invalid_state, "negative annihilation count");
      if (v != 0.0) spec.alphas[kk] = v;
    }
    if (spec.alphas.empty()) fail(errc::invalid_state, "loss spec needs a nonzero coefficient");
    return spec;
  }

  static LossSpec three_body(double sigma) {
    LossSpec spec;
    spec.tbr = true;
    spec.tbr_sigma = sigma;
    return spec;
  }
};

struct AccessibleSet {
  std::vector<int> totals;  // descending from N; always contains N

  bool contains(int n) const {
    for (int t : totals)
      if (t == n) return true;
    return false;
  }
};

inline AccessibleSet accessible_totals(const LossSpec& spec, int N) {
  if (N < 0) fail(errc::invalid_basis, "negative particle number");
  std::set<int, std::greater<int>> acc{N};
  for (auto& [kk, v] : spec.alphas)
    if (v != 0.0 && N - (kk.first + kk.second) >= 0) acc.insert(N - (kk.first + kk.second));
  if (spec.tbr) {
    if (N - 2 >= 0) acc.insert(N - 2);  // a^dag aaa branch
    if (N - 3 >= 0) acc.insert(N - 3);  // aaa branch
  }
  AccessibleSet out;
  out.totals.assign(acc.begin(), acc.end());
  return out;
}

inline bool s_A_degenerate(int m, const AccessibleSet& A) {
  int count = 0;
  for (int n : A.totals)
    if (fock::in_sector(n, m)) ++count;
  return count > 1;
}

// ---- analytic conjugated action -------------------------------------------
//
// U H_loss U^dag applied to |N,m0>, expanded exactly over the enlarged space.
// Uses the transformed modes a~ = c a - e^{i phi} s b, b~ = e^{-i phi} s a + c b
// (c = cos(theta/2), s = sin(theta/2)) and binomial expansion; for the TBR
// form the trailing n~_a factor is applied afterwards.

struct SectorAmplitudes {
  // amplitudes per accessible total, indexed like allowed_m(n)
  std::map<int, Eigen::VectorXcd> by_sector;
};

namespace detail {

inline double falling(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= (n - i);
  return v;
}

// accumulate coeff * a^j b^l |na0, nb0> into out
inline void apply_ann(std::map<std::pair<int, int>, complexd>& out, int na0, int nb0, int j,
                      int l, complexd coeff) {
  if (j > na0 || l > nb0) return;
  const double amp = std::sqrt(falling(na0, j) * falling(nb0, l));
  if (amp == 0.0) return;
  out[{na0 - j, nb0 - l}] += coeff * amp;
}

inline unsigned long long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned long long r = 1;
  k = std::min(k, n - k);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

// target occupation-number map (na,nb) -> amplitude of U H_loss U^dag |N,m0>
inline std::map<std::pair<int, int>, complexd> conjugated_loss_action(const LossSpec& spec,
                                                                      double theta, double phi,
                                                                      int N, int m0) {
  if (!fock::in_sector(N, m0)) fail(errc::invalid_basis, "m0 outside sector");
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const complexd w = std::exp(complexd(0.0, phi));
  const int na0 = (N + m0) / 2, nb0 = (N - m0) / 2;
  std::map<std::pair<int, int>, complexd> out;

  // scalar monomials: a~^{ka} b~^{kb}
  //   a~^{ka} = sum_i C(ka,i) c^i (-w s)^{ka-i} a^i b^{ka-i}
  //   b~^{kb} = sum_u C(kb,u) (conj(w) s)^u c^{kb-u} a^u b^{kb-u}
  for (auto& [kk, alpha] : spec.alphas) {
    const auto [ka, kb] = kk;
    for (int i = 0; i <= ka; ++i)
      for (int u = 0; u <= kb; ++u) {
        complexd coeff = double(detail::choose(ka, i)) * std::pow(c, i) *
                         std::pow(complexd(-s) * w, ka - i) * double(detail::choose(kb, u)) *
                         std::pow(std::conj(w) * s, u) * std::pow(c, kb - u);
        coeff *= alpha;
        detail::apply_ann(out, na0, nb0, i + u, (ka - i) + (kb - u), coeff);
      }
  }

  // TBR: sigma n~_a a~ a~ with n~_a = c^2 n_a + s^2 n_b - cs (w J+ + conj(w) J-)
  if (spec.tbr && spec.tbr_sigma != 0.0) {
    std::map<std::pair<int, int>, complexd> mid;
    for (int i = 0; i <= 2; ++i) {
      complexd coeff = double(detail::choose(2, i)) * std::pow(c, i) *
                       std::pow(complexd(-s) * w, 2 - i);
      detail::apply_ann(mid, na0, nb0, i, 2 - i, coeff * spec.tbr_sigma);
    }
    for (auto& [occ, amp] : mid) {
      const auto [na, nb] = occ;
      out[{na, nb}] += amp * (c * c * double(na) + s * s * double(nb));
      if (nb >= 1) out[{na + 1, nb - 1}] += -amp * c * s * w * std::sqrt(double(na + 1) * nb);
      if (na >= 1)
        out[{na - 1, nb + 1}] += -amp * c * s * std::conj(w) * std::sqrt(double(na) * (nb + 1));
    }
  }
  return out;
}

// First-order corrected state over the enlarged space for initial |N,m0>:
// amplitude(n',m') = <n',m'|U H U^dag|N,m0> / (E_{m0} - E_{m'}) for
// non-degenerate targets.  Degenerate targets (same energy as m0, including
// the same-m cross-sector states) receive no first-order amplitude: their
// block is strictly triangular.
inline SectorAmplitudes general_first_order(const LossSpec& spec, double theta, double phi,
                                            int N, int m0, double A1, double A2) {
  auto action = conjugated_loss_action(spec, theta, phi, N, m0);
  const double E0 = model::energy(A1, A2, m0);
  SectorAmplitudes out;
  for (auto& [occ, amp] : action) {
    const auto [na, nb] = occ;
    const int n = na + nb, mp = na - nb;
    if (n == N && mp == m0) continue;
    const double Em = model::energy(A1, A2, mp);
    if (std::abs(E0 - Em) <= 1e-9 * std::max({1.0, std::abs(E0), std::abs(Em)})) {
      continue;  // degenerate target, no first-order piece
    }
    auto it = out.by_sector.find(n);
    if (it == out.by_sector.end())
      it = out.by_sector.emplace(n, Eigen::VectorXcd::Zero(n + 1)).first;
    it->second(fock::sector_index(n, mp)) += amp / (E0 - Em);
  }
  return out;
}

// P_gen(m) to first order: |<N,m|U^dag|N,m0>|^2 plus the interference of the
// per-sector corrections, with d set to zero wherever |m| exceeds a sector.
inline wigner::DistributionSeries generalized_distribution(const SectorAmplitudes& corr,
                                                           const AccessibleSet& A, int N, int m0,
                                                           double theta) {
  wigner::DistributionSeries out = wigner::distribution(N, m0, theta);
  out.p1.assign(out.p0.size(), 0.0);
  for (auto& [n, vec] : corr.by_sector) {
    if (!A.contains(n)) fail(errc::invalid_state, "correction sector outside accessible set");
    for (int idx = 0; idx <= n; ++idx) {
      const complexd a = vec(idx);
      if (a == complexd(0.0, 0.0)) continue;
      const int mp = -n + 2 * idx;
      for (std::size_t i = 0; i < out.m_values.size(); ++i) {
        const int m = out.m_values[i];
        if (!fock::in_sector(n, m)) continue;
        const double d0 = wigner::wigner_d(N, m, m0, theta);
        if (d0 == 0.0) continue;
        // phi = 0 convention throughout the loss path: amplitudes are real
        out.p1[i] += 2.0 * d0 * std::real(a) * wigner::wigner_d(n, m, mp, theta);
      }
    }
  }
  return out;
}

// ---- closed forms ----------------------------------------------------------

struct LossCorrection {
  SectorAmplitudes state;
  wigner::DistributionSeries distribution;
};

// Background collisions from |N,N>: only the pure a^k branches survive, and
//   |N,N>^(1) = sum_k alpha_k cos^k(t/2) sqrt(prod_j (N-j)) /
//               (k A1 + k(2N-k) A2) |N-k,N-k>.
inline LossCorrection background_correction(int N, double theta,
                                            const std::map<int, double>& alpha_k, double A1,
                                            double A2) {
  LossCorrection out;
  out.distribution = wigner::distribution(N, N, theta);
  out.distribution.p1.assign(out.distribution.p0.size(), 0.0);
  const double ch = std::cos(0.5 * theta);
  for (auto& [k, alpha] : alpha_k) {
    if (k < 1) fail(errc::invalid_state, "loss monomials must annihilate at least one particle");
    if (alpha == 0.0 || k > N) continue;
    const double den = k * A1 + double(k) * (2.0 * N - k) * A2;
    if (den == 0.0) fail(errc::degenerate_state, "vanishing energy denominator");
    const double coef = alpha * std::pow(ch, k) * std::sqrt(detail::falling(N, k)) / den;
    const int n = N - k;
    auto it = out.state.by_sector.find(n);
    if (it == out.state.by_sector.end())
      it = out.state.by_sector.emplace(n, Eigen::VectorXcd::Zero(n + 1)).first;
    it->second(fock::sector_index(n, n)) += coef;
    // odd k contributes zero here by parity: d^{N-k}_{m,N-k} vanishes on the
    // m-grid of sector N
    for (std::size_t i = 0; i < out.distribution.m_values.size(); ++i) {
      const int m = out.distribution.m_values[i];
      if (!fock::in_sector(n, m)) continue;
      out.distribution.p1[i] += 2.0 * coef * wigner::wigner_d(N, m, N, theta) *
                                wigner::wigner_d(n, m, n, theta);
    }
  }
  return out;
}

// Three-body recombination from |N,N>, H = sigma a^dag aaa (the aaa branch
// cannot touch the distribution at first order).  Both target components of
// the conjugated operator are kept:
//   +sigma c^4 sqrt(N(N-1)) (N-2) / (2A1 + 4A2(N-1))          -> |N-2, N-2>
//   -sigma c^3 s sqrt(N(N-1)(N-2)) / (4A1 + 8A2(N-2))         -> |N-2, N-4>
inline LossCorrection tbr_correction(int N, double theta, double sigma, double A1, double A2) {
  if (N < 3) fail(errc::invalid_basis, "three-body recombination needs N >= 3");
  LossCorrection out;
  out.distribution = wigner::distribution(N, N, theta);
  out.distribution.p1.assign(out.distribution.p0.size(), 0.0);
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const double den2 = 2.0 * A1 + 4.0 * A2 * (N - 1.0);
  const double den4 = 4.0 * A1 + 8.0 * A2 * (N - 2.0);
  if (den2 == 0.0 || den4 == 0.0) fail(errc::degenerate_state, "vanishing energy denominator");
  const double c2 = sigma * std::pow(c, 4) * std::sqrt(double(N) * (N - 1)) * (N - 2.0) / den2;
  const double c4 = -sigma * std::pow(c, 3) * s * std::sqrt(double(N) * (N - 1) * (N - 2)) / den4;
  const int n = N - 2;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
  v(fock::sector_index(n, n)) = c2;
  if (fock::in_sector(n, n - 2)) v(fock::sector_index(n, n - 2)) = c4;
  out.state.by_sector.emplace(n, v);
  for (std::size_t i = 0; i < out.distribution.m_values.size(); ++i) {
    const int m = out.distribution.m_values[i];
    if (!fock::in_sector(n, m)) continue;
    const double d0 = wigner::wigner_d(N, m, N, theta);
    double add = c2 * wigner::wigner_d(n, m, n, theta);
    if (fock::in_sector(n, n - 2)) add += c4 * wigner::wigner_d(n, m, n - 2, theta);
    out.distribution.p1[i] += 2.0 * d0 * add;
  }
  return out;
}

// Diagnostic: the loss block over S_A(m) is strictly triangular (no
// first-order information).  Verified numerically via the oracle.
inline bool degenerate_block_is_nilpotent(const LossSpec& spec, const AccessibleSet& A, int m,
                                          double theta, double phi, double tol = 1e-10) {
  if (!s_A_degenerate(m, A)) fail(errc::invalid_state, "S_A(m) is not degenerate");
  std::vector<int> sectors;
  for (int n : A.totals)
    if (fock::in_sector(n, m)) sectors.push_back(n);
  // block entries <n_i, m| U H U^dag |n_j, m>
  double max_bad = 0.0, max_any = 0.0;
  for (std::size_t jj = 0; jj < sectors.size(); ++jj) {
    const int nj = sectors[jj];
    auto action = conjugated_loss_action(spec, theta, phi, nj, m);
    for (std::size_t ii = 0; ii < sectors.size(); ++ii) {
      const int ni = sectors[ii];
      complexd entry(0.0, 0.0);
      auto it = action.find({(ni + m) / 2, (ni - m) / 2});
      if (it != action.end()) entry = it->second;
      max_any = std::max(max_any, std::abs(entry));
      if (ni >= nj) max_bad = std::max(max_bad, std::abs(entry));
    }
  }
  return max_bad <= tol * std::max(1.0, max_any);
}

}  // namespace bec2::loss
