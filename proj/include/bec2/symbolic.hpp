#pragma once

// Exact normal-ordering engine for two-mode boson polynomials and the
// interaction-term counting results.
//
// Coefficients live in the ring Q[c, s, w, w^-1, A_0..A_9] with the relation
// s^2 = 1 - c^2 applied eagerly (s-degree is kept <= 1), where c = cos(t/2),
// s = sin(t/2) and w = e^{i phi}.  Every coefficient is linear in the A
// symbols, which is all the displaced n-model needs; exact zero testing is
// map emptiness.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <vector>

#include "bec2/errors.hpp"

namespace bec2::symbolic {

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) fail(errc::invalid_state, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(std::llabs(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool is_zero() const { return num == 0; }
  Rational operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
  }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
  Rational operator-() const { return Rational(-num, den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// one ring monomial: A_{a_idx} (-1 = none) * c^c_pow * s^s_pow * w^w_pow
struct CoeffKey {
  int a_idx = -1;
  int c_pow = 0;
  int s_pow = 0;  // 0 or 1 after reduction
  int w_pow = 0;
  auto operator<=>(const CoeffKey&) const = default;
};

using Coeff = std::map<CoeffKey, Rational>;

inline void coeff_add_term(Coeff& c, CoeffKey key, Rational r) {
  if (r.is_zero()) return;
  // reduce s^2 -> 1 - c^2
  if (key.s_pow >= 2) {
    const int t = key.s_pow / 2;
    const int rest = key.s_pow % 2;
    // (1 - c^2)^t = sum_j C(t,j) (-1)^j c^{2j}
    long long binom = 1;
    for (int j = 0; j <= t; ++j) {
      CoeffKey k2 = key;
      k2.s_pow = rest;
      k2.c_pow = key.c_pow + 2 * j;
      Rational term = r * Rational((j % 2) ? -binom : binom);
      auto it = c.find(k2);
      if (it == c.end()) {
        if (!term.is_zero()) c.emplace(k2, term);
      } else {
        it->second = it->second + term;
        if (it->second.is_zero()) c.erase(it);
      }
      binom = binom * (t - j) / (j + 1);
    }
    return;
  }
  auto it = c.find(key);
  if (it == c.end()) {
    c.emplace(key, r);
  } else {
    it->second = it->second + r;
    if (it->second.is_zero()) c.erase(it);
  }
}

inline Coeff coeff_mul(const Coeff& a, const Coeff& b) {
  Coeff out;
  for (auto& [ka, ra] : a)
    for (auto& [kb, rb] : b) {
      if (ka.a_idx >= 0 && kb.a_idx >= 0)
        fail(errc::invalid_state, "coefficients are linear in the A symbols");
      CoeffKey k;
      k.a_idx = ka.a_idx >= 0 ? ka.a_idx : kb.a_idx;
      k.c_pow = ka.c_pow + kb.c_pow;
      k.s_pow = ka.s_pow + kb.s_pow;
      k.w_pow = ka.w_pow + kb.w_pow;
      coeff_add_term(out, k, ra * rb);
    }
  return out;
}

inline Coeff coeff_scale(const Coeff& a, Rational r) {
  Coeff out;
  if (r.is_zero()) return out;
  for (auto& [k, v] : a) out.emplace(k, v * r);
  return out;
}

inline void coeff_accumulate(Coeff& into, const Coeff& add) {
  for (auto& [k, v] : add) coeff_add_term(into, k, v);
}

inline Coeff coeff_conj(const Coeff& a) {
  Coeff out;
  for (auto& [k, v] : a) {
    CoeffKey kc = k;
    kc.w_pow = -k.w_pow;
    out.emplace(kc, v);
  }
  return out;
}

inline Coeff coeff_one() {
  Coeff c;
  c.emplace(CoeffKey{}, Rational(1));
  return c;
}

inline Coeff coeff_A(int idx) {
  Coeff c;
  CoeffKey k;
  k.a_idx = idx;
  c.emplace(k, Rational(1));
  return c;
}

// normal-ordered monomial a^dag^p b^dag^q a^r b^s
struct Mono {
  int p = 0, q = 0, r = 0, s = 0;
  auto operator<=>(const Mono&) const = default;
  Mono adjoint() const { return Mono{r, s, p, q}; }
  bool diagonal() const { return p == r && q == s; }
  int degree() const { return p + q + r + s; }
};

struct BosonPolynomial {
  std::map<Mono, Coeff> terms;

  void add(Mono m, const Coeff& c) {
    if (c.empty()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, c);
    } else {
      coeff_accumulate(it->second, c);
      if (it->second.empty()) terms.erase(it);
    }
  }

  bool is_hermitian() const {
    for (auto& [m, c] : terms) {
      auto it = terms.find(m.adjoint());
      if (it == terms.end()) return false;
      Coeff diff = it->second;
      for (auto& [k, v] : coeff_conj(c)) coeff_add_term(diff, k, -v);
      if (!diff.empty()) return false;
    }
    return true;
  }
};

namespace detail {

inline long long ll_choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  k = std::min(k, n - k);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline long long ll_fact(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// product of two normal-ordered monomials as a normal-ordered polynomial:
//   a^r a^dag^p = sum_j j! C(r,j) C(p,j) a^dag^{p-j} a^{r-j}   (same for b)
inline void mono_mul_into(BosonPolynomial& out, const Mono& x, const Mono& y, const Coeff& c) {
  for (int ja = 0; ja <= std::min(x.r, y.p); ++ja)
    for (int jb = 0; jb <= std::min(x.s, y.q); ++jb) {
      const long long f = ll_fact(ja) * ll_choose(x.r, ja) * ll_choose(y.p, ja) * ll_fact(jb) *
                          ll_choose(x.s, jb) * ll_choose(y.q, jb);
      Mono m{x.p + y.p - ja, x.q + y.q - jb, x.r + y.r - ja, x.s + y.s - jb};
      out.add(m, coeff_scale(c, Rational(f)));
    }
}

}  // namespace detail

inline BosonPolynomial mul(const BosonPolynomial& a, const BosonPolynomial& b) {
  BosonPolynomial out;
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) detail::mono_mul_into(out, ma, mb, coeff_mul(ca, cb));
  return out;
}

inline BosonPolynomial add(const BosonPolynomial& a, const BosonPolynomial& b) {
  BosonPolynomial out = a;
  for (auto& [m, c] : b.terms) out.add(m, c);
  return out;
}

inline BosonPolynomial scale(const BosonPolynomial& a, const Coeff& c) {
  BosonPolynomial out;
  for (auto& [m, cm] : a.terms) out.add(m, coeff_mul(cm, c));
  return out;
}

enum class Factor : std::uint8_t { a, a_dag, b, b_dag };

// Normal-order an arbitrary product of elementary factors (times an exact
// coefficient) by folding elementary monomials in sequence; the canonical
// commutators [a,a^dag] = [b,b^dag] = 1 are realized by mono_mul_into.
inline BosonPolynomial normal_order(const std::vector<Factor>& factors,
                                    const Coeff& coefficient) {
  BosonPolynomial acc;
  acc.add(Mono{}, coefficient);
  for (Factor f : factors) {
    BosonPolynomial elem;
    switch (f) {
      case Factor::a: elem.add(Mono{0, 0, 1, 0}, coeff_one()); break;
      case Factor::a_dag: elem.add(Mono{1, 0, 0, 0}, coeff_one()); break;
      case Factor::b: elem.add(Mono{0, 0, 0, 1}, coeff_one()); break;
      case Factor::b_dag: elem.add(Mono{0, 1, 0, 0}, coeff_one()); break;
    }
    acc = mul(acc, elem);
  }
  return acc;
}

// idempotent on already-canonical polynomials
inline BosonPolynomial normal_order(const BosonPolynomial& p) { return p; }

// U^dag P U via the linear transform of the modes:
//   a -> c a + w s b,  b -> -w^-1 s a + c b,
//   a^dag -> c a^dag + w^-1 s b^dag,  b^dag -> -w s a^dag + c b^dag.
// The theta -> -theta variant (s -> -s) gives U P U^dag.
inline BosonPolynomial conjugate_by_displacement(const BosonPolynomial& P,
                                                 bool reverse = false) {
  const int sg = reverse ? -1 : 1;
  BosonPolynomial out;
  for (auto& [m, cm] : P.terms) {
    // creator group: (c ad + sg w^-1 s bd)^p (-sg w s ad + c bd)^q
    std::map<std::pair<int, int>, Coeff> cre;  // (#adag, #bdag)
    for (int i = 0; i <= m.p; ++i)
      for (int j = 0; j <= m.q; ++j) {
        Coeff c;
        CoeffKey k;
        k.c_pow = i + (m.q - j);
        k.s_pow = (m.p - i) + j;
        k.w_pow = -(m.p - i) + j;
        long long sign = ((j % 2) ? -1 : 1);
        if (sg < 0 && ((m.p - i + j) % 2)) sign = -sign;
        coeff_add_term(c, k,
                       Rational(sign * detail::ll_choose(m.p, i) * detail::ll_choose(m.q, j)));
        auto key = std::make_pair(i + j, (m.p - i) + (m.q - j));
        auto it = cre.find(key);
        if (it == cre.end()) cre.emplace(key, c);
        else coeff_accumulate(it->second, c);
      }
    // annihilator group: (c a + sg w s b)^r (-sg w^-1 s a + c b)^s
    std::map<std::pair<int, int>, Coeff> ann;
    for (int i = 0; i <= m.r; ++i)
      for (int j = 0; j <= m.s; ++j) {
        Coeff c;
        CoeffKey k;
        k.c_pow = i + (m.s - j);
        k.s_pow = (m.r - i) + j;
        k.w_pow = (m.r - i) - j;
        long long sign = ((j % 2) ? -1 : 1);
        if (sg < 0 && ((m.r - i + j) % 2)) sign = -sign;
        coeff_add_term(c, k,
                       Rational(sign * detail::ll_choose(m.r, i) * detail::ll_choose(m.s, j)));
        auto key = std::make_pair(i + j, (m.r - i) + (m.s - j));
        auto it = ann.find(key);
        if (it == ann.end()) ann.emplace(key, c);
        else coeff_accumulate(it->second, c);
      }
    for (auto& [kc, cc] : cre)
      for (auto& [ka, ca] : ann) {
        Mono mm{kc.first, kc.second, ka.first, ka.second};
        out.add(mm, coeff_mul(cm, coeff_mul(cc, ca)));
      }
  }
  return out;
}

// m-hat = a^dag a - b^dag b and the displaced n-model sum_{i=0}^n A_i m^i
inline BosonPolynomial m_hat() {
  BosonPolynomial p;
  p.add(Mono{1, 0, 1, 0}, coeff_one());
  p.add(Mono{0, 1, 0, 1}, coeff_scale(coeff_one(), Rational(-1)));
  return p;
}

inline BosonPolynomial n_model_displaced(int n_body) {
  BosonPolynomial H;
  H.add(Mono{}, coeff_A(0));
  BosonPolynomial mi;
  mi.add(Mono{}, coeff_one());
  const BosonPolynomial mh = m_hat();
  for (int i = 1; i <= n_body; ++i) {
    mi = mul(mi, mh);
    H = add(H, scale(mi, coeff_A(i)));
  }
  return conjugate_by_displacement(H);
}

// ---- term counting ---------------------------------------------------------

// chi(n) = (n+2)(n+4)/8 for even degree n: closed-form bound on the number of
// self-adjoint, normal-ordered, number-conserving homogeneous structures.
inline long long count_general_terms(int degree) {
  if (degree < 0 || degree % 2 != 0) fail(errc::invalid_degree, "degree must be even and >= 0");
  return (long long)(degree + 2) * (degree + 4) / 8;
}

inline long long count_general_terms_by_degree(int degree) { return count_general_terms(degree); }

// exhaustive enumeration of the same count: Hermitian classes of monomials
// a^dag^p b^dag^q a^r b^s with p+q = r+s = degree/2
inline long long enumerate_general_terms(int degree) {
  if (degree < 0 || degree % 2 != 0) fail(errc::invalid_degree, "degree must be even and >= 0");
  const int k = degree / 2;
  long long count = 0;
  for (int p = 0; p <= k; ++p)
    for (int r = 0; r <= k; ++r) {
      const int q = k - p, s = k - r;
      // class representative: (p,q,r,s) vs its adjoint (r,s,p,q)
      if (std::tie(p, q) <= std::tie(r, s)) ++count;
    }
  return count;
}

inline long long count_general_cumulative(int n_body) {
  if (n_body < 0) fail(errc::invalid_degree, "body count must be >= 0");
  long long total = 0;
  for (int j = 0; j <= n_body; ++j) total += count_general_terms(2 * j);
  return total;
}

inline long long count_general_cumulative_by_body_count(int n_body) {
  return count_general_cumulative(n_body);
}

// same quantity indexed by polynomial degree: (n+2)(n+4)(n+6)/48 at even n
inline long long count_general_cumulative_by_degree(int degree) {
  if (degree < 0 || degree % 2 != 0) fail(errc::invalid_degree, "degree must be even and >= 0");
  return (long long)(degree + 2) * (degree + 4) * (degree + 6) / 48;
}

namespace detail {

// polynomial in (Nhat, mhat) over the coefficient ring
using NMKey = std::pair<int, int>;  // (N power, m power)
using NMPoly = std::map<NMKey, Rational>;

inline NMPoly nm_mul_linear(const NMPoly& p, Rational cn, Rational cm, Rational c0) {
  // multiply by (cn N + cm m + c0)
  NMPoly out;
  auto acc = [&out](NMKey k, Rational v) {
    if (v.is_zero()) return;
    auto it = out.find(k);
    if (it == out.end()) out.emplace(k, v);
    else {
      it->second = it->second + v;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (auto& [k, v] : p) {
    acc({k.first + 1, k.second}, v * cn);
    acc({k.first, k.second + 1}, v * cm);
    acc(k, v * c0);
  }
  return out;
}

// falling factorials n_a^(r) n_b^(q) with n_a = (N+m)/2, n_b = (N-m)/2
inline NMPoly mid_diagonal_poly(int r, int q) {
  NMPoly p{{{0, 0}, Rational(1)}};
  for (int x = 0; x < r; ++x)
    p = nm_mul_linear(p, Rational(1, 2), Rational(1, 2), Rational(-x));
  for (int y = 0; y < q; ++y)
    p = nm_mul_linear(p, Rational(1, 2), Rational(-1, 2), Rational(-y));
  return p;
}

}  // namespace detail

// Number of independent coupling structures in the displaced n-model, the
// counting convention that the interaction table uses.  Procedure: expand
// U^dag (sum A_i m^i) U exactly; write each term as a^dag^k D(N,m) b^k with
// the diagonal polynomial between the ladder factors; fold every pure-N
// diagonal slot into the constant coupling; then, per (band, m-power), the
// N-carrying slots count as a single composite coupling when their
// N-polynomial is a rational multiple of a power of the Casimir N(N+2), and
// one per N power otherwise.
inline long long count_n_model_terms(int n_body) {
  if (n_body < 0) fail(errc::invalid_degree, "body count must be >= 0");
  if (n_body > 5) fail(errc::resource_limit, "term counting supported for n <= 5");
  BosonPolynomial H = n_model_displaced(n_body);

  // slots[(band k, N power, m power)] -> ring coefficient
  std::map<std::tuple<int, int, int>, Coeff> slots;
  for (auto& [m, cm] : H.terms) {
    const int k = m.p - m.r;
    if (k != m.s - m.q) fail(errc::invalid_state, "displaced n-model must conserve N");
    if (k < 0) continue;  // adjoint band
    const auto D = detail::mid_diagonal_poly(m.r, m.q);
    for (auto& [nm, rat] : D) {
      auto key = std::make_tuple(k, nm.first, nm.second);
      Coeff scaled = coeff_scale(cm, rat);
      auto it = slots.find(key);
      if (it == slots.end()) slots.emplace(key, scaled);
      else {
        coeff_accumulate(it->second, scaled);
        if (it->second.empty()) slots.erase(it);
      }
    }
  }

  // organize: band -> m power -> (N power -> coeff)
  std::map<int, std::map<int, std::map<int, Coeff>>> bands;
  for (auto& [key, c] : slots) {
    if (c.empty()) continue;
    auto [k, npow, mpow] = key;
    bands[k][mpow][npow] = c;
  }

  long long total = 0;
  for (auto& [k, by_j] : bands) {
    for (auto& [j, by_i] : by_j) {
      if (k == 0 && j == 0) {
        total += 1;  // constant coupling absorbs every pure-N diagonal slot
        continue;
      }
      long long cnt = by_i.count(0) ? 1 : 0;
      std::map<int, Coeff> nslots;
      for (auto& [i, c] : by_i)
        if (i >= 1) nslots.emplace(i, c);
      if (nslots.empty()) {
        total += cnt;
        continue;
      }
      // Casimir test: does {coeff_i N^i} equal q(ring) * (N(N+2))^p ?
      const int imax = nslots.rbegin()->first;
      bool merged = false;
      if (imax % 2 == 0) {
        const int p = imax / 2;
        // nonzero monomials of (N(N+2))^p: N^{p+t} with coefficient C(p,t) 2^{p-t}
        std::map<int, Rational> cas;
        for (int t = 0; t <= p; ++t) {
          long long binom = detail::ll_choose(p, t);
          long long pw = 1;
          for (int x = 0; x < p - t; ++x) pw *= 2;
          cas.emplace(p + t, Rational(binom * pw));
        }
        // need identical support and cross-ratio equality
        bool ok = true;
        for (auto& [i, r] : cas)
          if (i >= 1 && !nslots.count(i)) ok = false;
        for (auto& [i, c] : nslots)
          if (!cas.count(i)) ok = false;
        if (ok) {
          auto ref = nslots.begin();
          const Rational cas_ref = cas.at(ref->first);
          for (auto& [i, c] : nslots) {
            // c * cas_ref == ref->second * cas_i  (exact ring comparison)
            Coeff lhs = coeff_scale(c, cas_ref);
            Coeff rhs = coeff_scale(ref->second, cas.at(i));
            for (auto& [kk, vv] : rhs) coeff_add_term(lhs, kk, -vv);
            if (!lhs.empty()) {
              ok = false;
              break;
            }
          }
        }
        merged = ok;
      }
      cnt += merged ? 1 : (long long)nslots.size();
      total += cnt;
    }
  }
  return total;
}

}  // namespace bec2::symbolic
