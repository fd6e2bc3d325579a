#pragma once

// Schwinger su(2) boson basis |N,m> and sparse ladder actions.
//
// A sector H_N is spanned by |N,m>, m = -N, -N+2, ..., N, ordered by
// ascending m everywhere in this library.  n_a = (N+m)/2, n_b = (N-m)/2.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bec2/errors.hpp"

namespace bec2::fock {

using complexd = std::complex<double>;

struct FockLabel {
  int N = 0;
  int m = 0;

  FockLabel(int N_, int m_) : N(N_), m(m_) {
    if (N < 0) fail(errc::invalid_basis, "negative particle number");
    if (std::abs(m) > N || ((N + m) % 2) != 0)
      fail(errc::invalid_basis, "m must lie in {-N, -N+2, ..., N}");
  }

  int n_a() const { return (N + m) / 2; }
  int n_b() const { return (N - m) / 2; }
  bool operator==(const FockLabel&) const = default;
};

inline std::vector<int> allowed_m(int N) {
  if (N < 0) fail(errc::invalid_basis, "negative particle number");
  std::vector<int> out;
  out.reserve(N + 1);
  for (int m = -N; m <= N; m += 2) out.push_back(m);
  return out;
}

// position of |N,m> within its sector
inline int sector_index(int N, int m) {
  if (std::abs(m) > N || ((N + m) % 2) != 0) fail(errc::invalid_basis, "label outside sector");
  return (m + N) / 2;
}

inline bool in_sector(int N, int m) { return N >= 0 && std::abs(m) <= N && ((N + m) % 2) == 0; }

// a^dag b |N,m> = 1/2 sqrt(N(N+2) - m(m+2)) |N,m+2>
inline std::pair<double, std::optional<FockLabel>> apply_exchange_raise(const FockLabel& s) {
  const double arg = double(s.N) * (s.N + 2) - double(s.m) * (s.m + 2);
  if (s.m == s.N || arg <= 0.0) return {0.0, std::nullopt};
  return {0.5 * std::sqrt(arg), FockLabel(s.N, s.m + 2)};
}

// a b^dag |N,m> = 1/2 sqrt(N(N+2) - m(m-2)) |N,m-2>
inline std::pair<double, std::optional<FockLabel>> apply_exchange_lower(const FockLabel& s) {
  const double arg = double(s.N) * (s.N + 2) - double(s.m) * (s.m - 2);
  if (s.m == -s.N || arg <= 0.0) return {0.0, std::nullopt};
  return {0.5 * std::sqrt(arg), FockLabel(s.N, s.m - 2)};
}

enum class Factor : std::uint8_t { a, a_dag, b, b_dag };

// An ordered product of elementary mode operators with a scalar coefficient.
// Normal order requires, per mode, every daggered factor left of every
// undaggered one; cross-mode order is immaterial.
struct MonomialOp {
  std::vector<Factor> factors;  // applied right-to-left to kets
  complexd coefficient{1.0, 0.0};

  static MonomialOp from_powers(int p_adag, int q_bdag, int r_a, int s_b,
                                complexd coeff = {1.0, 0.0}) {
    MonomialOp op;
    op.coefficient = coeff;
    for (int i = 0; i < p_adag; ++i) op.factors.push_back(Factor::a_dag);
    for (int i = 0; i < q_bdag; ++i) op.factors.push_back(Factor::b_dag);
    for (int i = 0; i < r_a; ++i) op.factors.push_back(Factor::a);
    for (int i = 0; i < s_b; ++i) op.factors.push_back(Factor::b);
    return op;
  }

  bool is_normal_ordered() const {
    bool seen_a = false, seen_b = false;
    for (Factor f : factors) {
      switch (f) {
        case Factor::a: seen_a = true; break;
        case Factor::b: seen_b = true; break;
        case Factor::a_dag:
          if (seen_a) return false;
          break;
        case Factor::b_dag:
          if (seen_b) return false;
          break;
      }
    }
    return true;
  }

  // creators minus annihilators; negative means net particle loss
  int net_creation() const {
    int n = 0;
    for (Factor f : factors) n += (f == Factor::a_dag || f == Factor::b_dag) ? 1 : -1;
    return n;
  }
};

// Dense matrix of a normal-ordered monomial on sector H_N.  Columns follow the
// ascending-m ordering of the domain sector; the codomain sector is
// N + net_creation (loss monomials map H_N -> H_{N-k}).
inline Eigen::MatrixXcd build_operator_matrix(const MonomialOp& op, int N) {
  if (N < 0) fail(errc::invalid_basis, "negative particle number");
  if (!op.is_normal_ordered()) fail(errc::not_normal_ordered, "monomial must be normal-ordered");
  const int Nout = N + op.net_creation();
  const int rows = Nout >= 0 ? Nout + 1 : 0;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows, N + 1);
  if (rows == 0) return M;
  for (int col = 0; col <= N; ++col) {
    int na = col, nb = N - col;  // ascending m <=> ascending n_a
    double amp = 1.0;
    bool dead = false;
    // factors act right-to-left
    for (auto it = op.factors.rbegin(); it != op.factors.rend() && !dead; ++it) {
      switch (*it) {
        case Factor::a:
          if (na == 0) { dead = true; break; }
          amp *= std::sqrt(double(na--));
          break;
        case Factor::b:
          if (nb == 0) { dead = true; break; }
          amp *= std::sqrt(double(nb--));
          break;
        case Factor::a_dag: amp *= std::sqrt(double(++na)); break;
        case Factor::b_dag: amp *= std::sqrt(double(++nb)); break;
      }
    }
    if (dead) continue;
    M(na, col) = op.coefficient * amp;
  }
  return M;
}

}  // namespace bec2::fock
