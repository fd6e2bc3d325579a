#pragma once

// Time evolution of the relative population <m>(t) for states
// |psi(0)> = sum_m C_m U^dag|N,m> with real C_m, unperturbed and with
// first-order coupling corrections.  All formulas are closed trigonometric
// sums; the sampling grid is caller-supplied.

#include <cmath>
#include <complex>
#include <vector>

#include "bec2/errors.hpp"
#include "bec2/fock.hpp"
#include "bec2/model.hpp"
#include "bec2/perturb.hpp"

namespace bec2::dynamics {

using complexd = std::complex<double>;

struct InitialState {
  int N = 0;
  std::vector<double> C;  // indexed like allowed_m(N)

  InitialState(int N_, std::vector<double> amplitudes) : N(N_), C(std::move(amplitudes)) {
    if (int(C.size()) != N + 1) fail(errc::invalid_state, "amplitude count must be N+1");
    double s = 0.0;
    for (double c : C) s += c * c;
    if (std::abs(s - 1.0) > 1e-12) fail(errc::invalid_state, "state must be normalized");
  }
};

inline InitialState gaussian_state(int N, double center, double width) {
  if (width <= 0.0) fail(errc::invalid_state, "width must be positive");
  std::vector<double> C(N + 1);
  double norm = 0.0;
  for (int i = 0; i <= N; ++i) {
    const double m = -N + 2.0 * i;
    C[i] = std::exp(-(m - center) * (m - center) / (4.0 * width * width));
    norm += C[i] * C[i];
  }
  norm = std::sqrt(norm);
  for (double& c : C) c /= norm;
  return InitialState(N, std::move(C));
}

inline InitialState basis_state(int N, int m0) {
  std::vector<double> C(N + 1, 0.0);
  C[fock::sector_index(N, m0)] = 1.0;
  return InitialState(N, std::move(C));
}

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  bool breakdown = false;  // |<m>| exceeded N somewhere (corrected series only)

  double max_abs() const {
    double v = 0.0;
    for (double x : values) v = std::max(v, std::abs(x));
    return v;
  }
};

// <m>(t) = cos(t) sum m C_m^2
//          - sin(t) sum C_m C_{m+2} sqrt(N(N+2)-m(m+2)) cos(phi + (E_{m+2}-E_m) t)
inline TimeSeries relative_population(const InitialState& state, const model::ModelParams& p,
                                      const std::vector<double>& times) {
  if (state.N != p.N) fail(errc::invalid_state, "state/parameter sector mismatch");
  const int N = p.N;
  TimeSeries out;
  out.times = times;
  out.values.reserve(times.size());
  double base = 0.0;
  for (int i = 0; i <= N; ++i) base += (-N + 2.0 * i) * state.C[i] * state.C[i];
  base *= std::cos(p.theta);
  std::vector<double> amp(N), freq(N);
  for (int i = 0; i < N; ++i) {
    const int m = -N + 2 * i;
    amp[i] = state.C[i] * state.C[i + 1] *
             std::sqrt(double(N) * (N + 2) - double(m) * (m + 2));
    freq[i] = model::energy(p.A1, p.A2, m + 2) - model::energy(p.A1, p.A2, m);
  }
  for (double t : times) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += amp[i] * std::cos(p.phi + freq[i] * t);
    out.values.push_back(base - std::sin(p.theta) * s);
  }
  return out;
}

// First-order corrected series: zeroth-order form evaluated with corrected
// energies E^(0+1), plus 2 Re of the amplitude cross terms between each basis
// component and its first-order correction.  Exact in phi.
inline TimeSeries relative_population_corrected(const InitialState& state,
                                                const model::ModelParams& p,
                                                const perturb::PerturbationKind& kind,
                                                const std::vector<double>& times) {
  if (state.N != p.N) fail(errc::invalid_state, "state/parameter sector mismatch");
  const int N = p.N;
  const complexd w = std::exp(complexd(0.0, p.phi));
  std::vector<double> E(N + 1), Ec(N + 1);
  for (int i = 0; i <= N; ++i) {
    const int m = -N + 2 * i;
    E[i] = model::energy(p.A1, p.A2, m);
    Ec[i] = E[i] + std::real(perturb::matrix_element(kind, p.theta, p.phi, p.N, m, m));
  }
  // zeroth structure with corrected energies
  double base = 0.0;
  for (int i = 0; i <= N; ++i) base += (-N + 2.0 * i) * state.C[i] * state.C[i];
  base *= std::cos(p.theta);
  std::vector<double> amp0(N), freq0(N);
  for (int i = 0; i < N; ++i) {
    const int m = -N + 2 * i;
    amp0[i] = state.C[i] * state.C[i + 1] *
              std::sqrt(double(N) * (N + 2) - double(m) * (m + 2));
    freq0[i] = Ec[i + 1] - Ec[i];
  }
  // first-order cross terms: for each populated m and coupled k,
  //   2 Re[ C_m a_{m,k} ( cos t * k C_k e^{i (E_k - E_m) t}
  //        - sin t ( e^{i phi} g+(k) C_{k+1 idx} e^{i(E_{k+2}-E_m)t}
  //                + e^{-i phi} g-(k) C_{k-1 idx} e^{i(E_{k-2}-E_m)t} ) ) ]
  struct Term {
    complexd amp;
    double freq;
  };
  std::vector<Term> terms;
  bool any_degenerate = false;
  for (int i = 0; i <= N; ++i) {
    if (state.C[i] == 0.0) continue;
    const int m = -N + 2 * i;
    perturb::FirstOrderCorrection corr;
    try {
      corr = perturb::first_order_coefficients(kind, p, m);
    } catch (const Error& e) {
      if (e.code() == errc::degenerate_state) {
        any_degenerate = true;
        break;
      }
      throw;
    }
    for (auto& [k, a] : corr.a) {
      const int j = fock::sector_index(N, k);
      const complexd pref = state.C[i] * a;
      terms.push_back({pref * std::cos(p.theta) * double(k) * state.C[j], E[j] - E[i]});
      if (j + 1 <= N) {
        const double gp = 0.5 * std::sqrt(double(N) * (N + 2) - double(k) * (k + 2));
        terms.push_back({pref * (-std::sin(p.theta)) * w * gp * state.C[j + 1], E[j + 1] - E[i]});
      }
      if (j - 1 >= 0) {
        const double gm = 0.5 * std::sqrt(double(N) * (N + 2) - double(k) * (k - 2));
        terms.push_back({pref * (-std::sin(p.theta)) * std::conj(w) * gm * state.C[j - 1],
                         E[j - 1] - E[i]});
      }
    }
  }
  if (any_degenerate)
    fail(errc::degenerate_state, "populated level is degenerate; corrected evolution undefined");
  TimeSeries out;
  out.times = times;
  out.values.reserve(times.size());
  for (double t : times) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += amp0[i] * std::cos(p.phi + freq0[i] * t);
    double val = base - std::sin(p.theta) * s;
    complexd acc(0.0, 0.0);
    for (const Term& term : terms) acc += term.amp * std::exp(complexd(0.0, term.freq * t));
    val += 2.0 * acc.real();
    out.values.push_back(val);
    if (std::abs(val) > double(N)) out.breakdown = true;
  }
  return out;
}

}  // namespace bec2::dynamics
