// Command-line surface: distribution/perturbation series, entropy surfaces,
// relative-population dynamics, degenerate pairs, loss corrections, term
// counting, and the built-in verification suite.
//
// Output is CSV (header row, 17 significant digits) or JSON (config echo +
// column arrays); identical configurations produce byte-identical files.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bec2/dynamics.hpp"
#include "bec2/entangle.hpp"
#include "bec2/errors.hpp"
#include "bec2/fock.hpp"
#include "bec2/loss.hpp"
#include "bec2/model.hpp"
#include "bec2/oracle.hpp"
#include "bec2/perturb.hpp"
#include "bec2/symbolic.hpp"
#include "bec2/wigner.hpp"

namespace {

using bec2::perturb::Kind;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void row(std::initializer_list<double> vals) { rows.emplace_back(vals); }
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const Table& t, const nlohmann::json& config_echo, const std::string& out,
                  const std::string& format) {
  std::string path = out;
  if (!path.empty() && path.find('/') == std::string::npos) {
    if (const char* dir = std::getenv("BEC2_OUT_DIR"); dir && *dir)
      path = std::string(dir) + "/" + path;
  }
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) {
      std::cerr << "cannot open output file: " << path << "\n";
      std::exit(1);
    }
    os = &file;
  }
  if (format == "json") {
    nlohmann::json j;
    j["config"] = config_echo;
    j["columns"] = t.columns;
    auto& data = j["data"] = nlohmann::json::array();
    for (auto& r : t.rows) {
      nlohmann::json jr = nlohmann::json::array();
      for (double v : r) jr.push_back(v);
      data.push_back(std::move(jr));
    }
    *os << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      *os << (i ? "," : "") << t.columns[i];
    *os << "\n";
    for (auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) *os << (i ? "," : "") << fmt17(r[i]);
      *os << "\n";
    }
  }
}

Kind parse_kind(const std::string& s) {
  if (s == "omega") return Kind::Omega;
  if (s == "lambda") return Kind::LambdaSmall;
  if (s == "U") return Kind::Uelastic;
  if (s == "Lambda") return Kind::LambdaBig;
  if (s == "mu") return Kind::Mu;
  throw CLI::ValidationError("--kind", "expected one of omega|lambda|U|Lambda|mu");
}

std::map<int, double> parse_alphas(const std::vector<std::string>& kv) {
  std::map<int, double> out;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--alpha", "expected k=value");
    out[std::stoi(s.substr(0, eq))] = std::stod(s.substr(eq + 1));
  }
  return out;
}

// ground-state condition used by the parameter-kind entropy surfaces
double a1_for_m0(int m0, double A2) { return -2.0 * A2 * m0; }

// ---- verify: compact oracle-equivalence sweep ------------------------------

int run_verify() {
  using namespace bec2;
  std::mt19937 rng(20240811u);
  auto uni = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  int failures = 0;
  auto report = [&](const std::string& name, double err, double tol) {
    const bool ok = err <= tol;
    if (!ok) ++failures;
    std::printf("%-58s %s  (err %.3e, tol %.1e)\n", name.c_str(), ok ? "PASS" : "FAIL", err, tol);
  };

  {  // exact-solution identity
    double worst = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
      const int N = 2 + int(rng() % 11);
      model::ModelParams p{0.0, uni(-3, 3), uni(-2, 2), uni(0.05, 3.1), uni(0, 6.28), N};
      auto U = model::displacement_unitary(p.theta, p.phi, N);
      auto H2 = model::build_h2(model::couplings_from_constraints(p), p.phi, N);
      auto H0 = model::build_h0(p);
      const double err = (H2 - U.adjoint() * H0 * U).norm() / std::max(H0.norm(), 1e-30);
      worst = std::max(worst, err);
    }
    report("H2 equals Udag H0 U (random parameters, N <= 12)", worst, 1e-10);
  }
  {  // perturbation matrices vs numeric conjugation
    for (Kind k : {Kind::Omega, Kind::LambdaSmall, Kind::Uelastic, Kind::LambdaBig, Kind::Mu}) {
      double worst = 0.0;
      for (int trial = 0; trial < 8; ++trial) {
        const int N = 1 + int(rng() % 12);
        const double theta = uni(0.05, 3.1), phi = uni(0, 6.28);
        perturb::PerturbationKind pk{k, uni(-1, 1)};
        auto analytic = perturb::full_matrix(pk, theta, phi, N);
        oracle::SectorOperator bare(perturb::bare_matrix(pk, phi, N), N, N);
        auto conj = oracle::conjugate_numeric(bare, theta, phi);
        worst = std::max(worst, (analytic - conj.mat).cwiseAbs().maxCoeff());
      }
      report(std::string("conjugated ") + perturb::kind_name(k) + " matrix vs oracle", worst,
             1e-9);
    }
  }
  {  // wigner vs oracle column and reference path
    double worst = 0.0;
    for (int N : {6, 10, 17}) {
      const double theta = uni(0.1, 3.0);
      auto U = oracle::exact_unitary(theta, 0.0, N);
      for (int m = -N; m <= N; m += 2)
        for (int m0 = -N; m0 <= N; m0 += 2) {
          const double d = wigner::wigner_d(N, m, m0, theta);
          worst = std::max(worst, std::abs(d - U.mat.adjoint()(fock::sector_index(N, m),
                                                               fock::sector_index(N, m0)).real()));
          worst = std::max(worst, std::abs(d - wigner::wigner_d_reference(N, m, m0, theta)));
        }
    }
    report("wigner d vs oracle unitary and reference sum", worst, 1e-10);
  }
  {  // dynamics vs exact propagation
    const int N = 8;
    model::ModelParams p{0.0, 1.3, 1.0, 0.9, 0.7, N};
    auto state = dynamics::gaussian_state(N, 2.0, 2.0);
    std::vector<double> ts;
    for (int i = 0; i <= 40; ++i) ts.push_back(0.5 * i);
    auto series = dynamics::relative_population(state, p, ts);
    auto U = model::displacement_unitary(p.theta, p.phi, N);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(N + 1);
    for (int i = 0; i <= N; ++i) psi0(i) = state.C[i];
    psi0 = U.adjoint() * psi0;
    oracle::SectorOperator H2(model::build_h2(model::couplings_from_constraints(p), p.phi, N), N,
                              N);
    Eigen::MatrixXcd Md = fock::build_operator_matrix(fock::MonomialOp::from_powers(1, 0, 1, 0), N) -
              fock::build_operator_matrix(fock::MonomialOp::from_powers(0, 1, 0, 1), N);
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      auto psit = oracle::exact_propagate(H2, psi0, ts[i]);
      const double exact = std::real(psit.dot(Md * psit));
      worst = std::max(worst, std::abs(exact - series.values[i]));
    }
    report("relative population vs exact propagation (N=8)", worst, 1e-10);
  }
  {  // loss closed forms vs enlarged-space first order
    const int N = 16;
    const double theta = 0.9, A1 = 1.7, A2 = 1.0;
    auto closed = loss::background_correction(N, theta, {{2, -0.05}, {3, 0.04}, {4, -0.002}},
                                              A1, A2);
    auto spec = loss::LossSpec::background({{2, -0.05}, {3, 0.04}, {4, -0.002}});
    auto corr = loss::general_first_order(spec, theta, 0.0, N, N, A1, A2);
    auto gen = loss::generalized_distribution(corr, loss::accessible_totals(spec, N), N, N, theta);
    double worst = 0.0;
    for (std::size_t i = 0; i < gen.p0.size(); ++i)
      worst = std::max(worst, std::abs((gen.p0[i] + gen.p1[i]) -
                                       (closed.distribution.p0[i] + closed.distribution.p1[i])));
    auto tbr_closed = loss::tbr_correction(14, 0.8, 0.02, 1.3, 1.0);
    auto tbr_spec = loss::LossSpec::three_body(0.02);
    auto tbr_corr = loss::general_first_order(tbr_spec, 0.8, 0.0, 14, 14, 1.3, 1.0);
    auto tbr_gen = loss::generalized_distribution(tbr_corr, loss::accessible_totals(tbr_spec, 14),
                                                  14, 14, 0.8);
    for (std::size_t i = 0; i < tbr_gen.p0.size(); ++i)
      worst = std::max(worst,
                       std::abs((tbr_gen.p0[i] + tbr_gen.p1[i]) -
                                (tbr_closed.distribution.p0[i] + tbr_closed.distribution.p1[i])));
    report("loss closed forms vs enlarged-space first order", worst, 1e-10);
  }
  {  // counting table
    const long long nm[4] = {1, 3, 6, 13}, gen[4] = {1, 4, 10, 20};
    double err = 0.0;
    for (int n = 0; n <= 3; ++n) {
      err += std::llabs(bec2::symbolic::count_n_model_terms(n) - nm[n]);
      err += std::llabs(bec2::symbolic::count_general_cumulative(n) - gen[n]);
    }
    report("interaction-term counting table", err, 0.0);
  }
  std::printf("verify: %s\n", failures == 0 ? "all checks passed" : "FAILURES PRESENT");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-mode condensate toolkit: exact solutions and first-order perturbations"};
  app.require_subcommand(1);
  // config file (simple key=value under a [subcommand] section); command-line
  // flags take precedence over file values, file values over defaults
  app.set_config("--config");

  // shared options (registered per subcommand as needed)
  int N = 10;
  double theta = 1.0, phi = 0.0;
  int m0 = std::numeric_limits<int>::min();
  double A1 = 0.0, A2 = 1.0;
  std::string kind_s;
  double delta = 0.0;
  std::vector<std::string> alpha_kv;
  double sigma = 0.0;
  double t_max = 20.0;
  int t_steps = 801;
  std::string out, format = "csv";
  double theta_min = 0.15, theta_max = M_PI - 0.15;
  int theta_steps = 41;
  bool degenerate_mode = false, distribution_mode = false, ground_a1 = false;
  double state_center = 0.0, state_width = 2.0;
  bool state_is_gaussian = false;
  int max_n = 3;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", N, "total particle number");
    cmd->add_option("--theta", theta, "mixing angle");
    cmd->add_option("--phi", phi, "coupling phase");
    cmd->add_option("--a1", A1, "linear energy coefficient");
    cmd->add_option("--a2", A2, "quadratic energy coefficient");
    cmd->add_option("--out", out, "output file (BEC2_OUT_DIR prefixes bare names)");
    cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* cmd_dist = app.add_subcommand("distribution", "unperturbed particle distribution");
  add_common(cmd_dist);
  cmd_dist->add_option("--m0", m0, "initial relative number");

  auto* cmd_pert = app.add_subcommand("perturb", "first-order perturbed distribution");
  add_common(cmd_pert);
  cmd_pert->add_option("--m0", m0, "initial relative number");
  cmd_pert->add_option("--kind", kind_s, "omega|lambda|U|Lambda|mu")->required();
  cmd_pert->add_option("--delta", delta, "perturbation strength")->required();

  auto* cmd_ent = app.add_subcommand("entropy-surface", "entanglement over (theta, m0)");
  add_common(cmd_ent);
  cmd_ent->add_option("--kind", kind_s, "parameter perturbation kind");
  cmd_ent->add_option("--delta", delta, "perturbation strength");
  cmd_ent->add_option("--alpha", alpha_kv, "loss coefficient k=value (repeatable)");
  cmd_ent->add_option("--sigma", sigma, "three-body recombination strength");
  cmd_ent->add_option("--theta-min", theta_min, "grid lower edge");
  cmd_ent->add_option("--theta-max", theta_max, "grid upper edge");
  cmd_ent->add_option("--theta-steps", theta_steps, "grid points");
  cmd_ent->add_flag("--degenerate", degenerate_mode, "degenerate-pair surfaces");
  cmd_ent->add_flag("--ground-a1", ground_a1, "set A1 = -2 m0 A2 per grid point");

  auto* cmd_dyn = app.add_subcommand("dynamics", "relative population evolution");
  add_common(cmd_dyn);
  cmd_dyn->add_option("--kind", kind_s, "parameter perturbation kind");
  cmd_dyn->add_option("--delta", delta, "perturbation strength");
  cmd_dyn->add_option("--t-max", t_max, "time horizon");
  cmd_dyn->add_option("--t-steps", t_steps, "sample count");
  cmd_dyn->add_option("--m0", m0, "basis initial state |N,m0>");
  auto* gc = cmd_dyn->add_option("--state-center", state_center, "gaussian profile center");
  cmd_dyn->add_option("--state-width", state_width, "gaussian profile width");
  gc->each([&](const std::string&) { state_is_gaussian = true; });

  auto* cmd_deg = app.add_subcommand("degenerate", "degenerate-pair corrections");
  add_common(cmd_deg);
  cmd_deg->add_option("--kind", kind_s, "omega|lambda")->required();
  cmd_deg->add_option("--delta", delta, "perturbation strength")->required();
  cmd_deg->add_option("--m0", m0, "upper member of the pair (m0, m0-2); default N");
  cmd_deg->add_option("--theta-steps", theta_steps, "grid points for the energy curves");
  cmd_deg->add_flag("--distribution", distribution_mode,
                    "emit perturbed distributions at --theta instead of energy curves");

  auto* cmd_loss = app.add_subcommand("loss", "particle-loss corrected distribution");
  add_common(cmd_loss);
  cmd_loss->add_option("--m0", m0, "initial relative number; default N");
  cmd_loss->add_option("--alpha", alpha_kv, "background coefficient k=value (repeatable)");
  cmd_loss->add_option("--sigma", sigma, "three-body recombination strength");

  auto* cmd_count = app.add_subcommand("count", "interaction-term counting table");
  cmd_count->add_option("--max-n", max_n, "largest body count");
  cmd_count->add_option("--out", out, "output file");
  cmd_count->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* cmd_verify = app.add_subcommand("verify", "oracle-equivalence checks (small N)");
  (void)cmd_verify;

  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json echo;
    echo["n"] = N;
    echo["theta"] = theta;
    echo["phi"] = phi;
    echo["a1"] = A1;
    echo["a2"] = A2;

    if (app.got_subcommand(cmd_verify)) return run_verify();

    if (app.got_subcommand(cmd_count)) {
      Table t;
      t.columns = {"n", "n_model", "general", "missed"};
      std::printf("%4s %12s %12s %10s\n", "n", "n-model", "general", "missed");
      for (int n = 0; n <= max_n; ++n) {
        const long long nm = bec2::symbolic::count_n_model_terms(n);
        const long long gen = bec2::symbolic::count_general_cumulative(n);
        t.row({double(n), double(nm), double(gen), double(gen - nm)});
        std::printf("%4d %12lld %12lld %10lld\n", n, nm, gen, gen - nm);
      }
      echo = {{"max_n", max_n}};
      if (!out.empty()) write_output(t, echo, out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_dist)) {
      if (m0 == std::numeric_limits<int>::min()) m0 = N;
      echo["m0"] = m0;
      auto series = bec2::wigner::distribution(N, m0, theta);
      Table t;
      t.columns = {"m", "P"};
      for (std::size_t i = 0; i < series.m_values.size(); ++i)
        t.row({double(series.m_values[i]), series.p0[i]});
      write_output(t, echo, out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_pert)) {
      if (m0 == std::numeric_limits<int>::min()) m0 = N;
      echo["m0"] = m0;
      echo["kind"] = kind_s;
      echo["delta"] = delta;
      bec2::model::ModelParams p{0.0, A1, A2, theta, phi, N};
      bec2::perturb::PerturbationKind pk{parse_kind(kind_s), delta};
      auto corr = bec2::perturb::first_order_coefficients(pk, p, m0);
      if (corr.breakdown_warning)
        std::cerr << "warning: max |a_{m0,m}| = " << corr.max_abs()
                  << " exceeds the first-order trust budget\n";
      auto series = bec2::perturb::perturbed_distribution(pk, p, m0);
      Table t;
      t.columns = {"m", "P0", "P1", "P01"};
      for (std::size_t i = 0; i < series.m_values.size(); ++i)
        t.row({double(series.m_values[i]), series.p0[i], series.p1[i],
               series.p0[i] + series.p1[i]});
      write_output(t, echo, out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_ent)) {
      auto alphas = parse_alphas(alpha_kv);
      const bool loss_mode = !alphas.empty() || sigma != 0.0;
      const bool kind_mode = !kind_s.empty();
      std::vector<double> thetas;
      if (cmd_ent->count("--theta")) {
        thetas.push_back(theta);
      } else {
        for (int i = 0; i < theta_steps; ++i)
          thetas.push_back(theta_min + (theta_max - theta_min) * i /
                           std::max(1, theta_steps - 1));
      }
      Table t;
      t.columns = {"theta", "m0", "S0", "dS"};
      for (double th : thetas) {
        for (int mm = -N; mm <= N; mm += 2) {
          double a1 = (kind_mode && (ground_a1 || !cmd_ent->count("--a1"))) ? a1_for_m0(mm, A2)
                                                                            : A1;
          double S0 = 0.0, dS = 0.0;
          if (degenerate_mode) {
            if (mm - 2 < -N) continue;
            a1 = -(2.0 * mm - 2.0) * A2;
            bec2::model::ModelParams p{0.0, a1, A2, th, phi, N};
            bec2::perturb::PerturbationKind pk{parse_kind(kind_s), delta};
            auto sol = bec2::perturb::degenerate_solve_general(pk, p, {mm, mm - 2});
            const auto& v = sol.vec_minus;  // lower-energy branch (ordering includes delta)
            std::vector<double> P(N + 1);
            for (int i = 0; i <= N; ++i) {
              const int m = -N + 2 * i;
              const double amp = std::real(v(0)) * bec2::wigner::wigner_d(N, m, mm - 2, th) +
                                 std::real(v(1)) * bec2::wigner::wigner_d(N, m, mm, th);
              P[i] = amp * amp;
            }
            auto base = bec2::wigner::distribution(N, mm, th);
            S0 = bec2::entangle::entropy(base.p0);
            dS = bec2::entangle::entropy(P) - S0;
          } else if (loss_mode) {
            bec2::loss::LossSpec spec = sigma != 0.0 ? bec2::loss::LossSpec::three_body(sigma)
                                                     : bec2::loss::LossSpec::background(alphas);
            auto corr = bec2::loss::general_first_order(spec, th, 0.0, N, mm, a1, A2);
            auto gen = bec2::loss::generalized_distribution(
                corr, bec2::loss::accessible_totals(spec, N), N, mm, th);
            auto res = bec2::entangle::entropy_first_order(gen);
            S0 = res.S0;
            dS = res.S1_shift;
          } else if (kind_mode) {
            bec2::model::ModelParams p{0.0, a1, A2, th, phi, N};
            bec2::perturb::PerturbationKind pk{parse_kind(kind_s), delta};
            auto series = bec2::perturb::perturbed_distribution(pk, p, mm);
            auto res = bec2::entangle::entropy_first_order(series);
            S0 = res.S0;
            dS = res.S1_shift;
          } else {
            S0 = bec2::entangle::entropy(bec2::wigner::distribution(N, mm, th).p0);
          }
          t.row({th, double(mm), S0, dS});
        }
      }
      echo["kind"] = kind_s;
      echo["delta"] = delta;
      echo["sigma"] = sigma;
      echo["degenerate"] = degenerate_mode;
      write_output(t, echo, out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_dyn)) {
      bec2::model::ModelParams p{0.0, A1, A2, theta, phi, N};
      std::optional<bec2::dynamics::InitialState> state;
      if (state_is_gaussian)
        state = bec2::dynamics::gaussian_state(N, state_center, state_width);
      else if (m0 != std::numeric_limits<int>::min())
        state = bec2::dynamics::basis_state(N, m0);
      else
        state = bec2::dynamics::gaussian_state(N, state_center, state_width);
      std::vector<double> ts(t_steps);
      for (int i = 0; i < t_steps; ++i)
        ts[i] = t_max * i / std::max(1, t_steps - 1);
      auto base = bec2::dynamics::relative_population(*state, p, ts);
      Table t;
      if (!kind_s.empty()) {
        bec2::perturb::PerturbationKind pk{parse_kind(kind_s), delta};
        auto corr = bec2::dynamics::relative_population_corrected(*state, p, pk, ts);
        if (corr.breakdown)
          std::cerr << "warning: |<m>| exceeded N -- first-order theory has broken down\n";
        t.columns = {"t", "m_expect", "m_expect_corrected"};
        for (std::size_t i = 0; i < ts.size(); ++i)
          t.row({ts[i], base.values[i], corr.values[i]});
        echo["breakdown"] = corr.breakdown;
      } else {
        t.columns = {"t", "m_expect"};
        for (std::size_t i = 0; i < ts.size(); ++i) t.row({ts[i], base.values[i]});
      }
      echo["kind"] = kind_s;
      echo["delta"] = delta;
      write_output(t, echo, out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_deg)) {
      if (m0 == std::numeric_limits<int>::min()) m0 = N;
      const Kind k = parse_kind(kind_s);
      echo["kind"] = kind_s;
      echo["delta"] = delta;
      echo["m0"] = m0;
      Table t;
      if (distribution_mode) {
        const double a1 = -(2.0 * m0 - 2.0) * A2;
        bec2::model::ModelParams p{0.0, a1, A2, theta, phi, N};
        bec2::perturb::PerturbationKind pk{k, delta};
        auto sol = bec2::perturb::degenerate_solve_general(pk, p, {m0, m0 - 2});
        t.columns = {"m", "P0", "P_plus", "P_minus"};
        auto base = bec2::wigner::distribution(N, m0, theta);
        for (int i = 0; i <= N; ++i) {
          const int m = -N + 2 * i;
          auto prob = [&](const Eigen::Vector2cd& v) {
            const double amp = std::real(v(0)) * bec2::wigner::wigner_d(N, m, m0 - 2, theta) +
                               std::real(v(1)) * bec2::wigner::wigner_d(N, m, m0, theta);
            return amp * amp;
          };
          t.row({double(m), base.p0[i], prob(sol.vec_plus), prob(sol.vec_minus)});
        }
      } else {
        t.columns = {"theta", "eps_plus", "eps_minus"};
        for (int i = 0; i < theta_steps; ++i) {
          const double th = (M_PI * i) / std::max(1, theta_steps - 1);
          auto sol = bec2::perturb::degenerate_solve(k, th, N, delta);
          t.row({th, sol.eps_plus, sol.eps_minus});
        }
      }
      write_output(t, echo, out, format);
      return 0;
    }

    if (app.got_subcommand(cmd_loss)) {
      if (m0 == std::numeric_limits<int>::min()) m0 = N;
      auto alphas = parse_alphas(alpha_kv);
      echo["m0"] = m0;
      echo["sigma"] = sigma;
      bec2::wigner::DistributionSeries series;
      if (m0 == N && sigma != 0.0 && alphas.empty()) {
        series = bec2::loss::tbr_correction(N, theta, sigma, A1, A2).distribution;
      } else if (m0 == N && !alphas.empty() && sigma == 0.0) {
        series = bec2::loss::background_correction(N, theta, alphas, A1, A2).distribution;
      } else {
        bec2::loss::LossSpec spec = sigma != 0.0 ? bec2::loss::LossSpec::three_body(sigma)
                                                 : bec2::loss::LossSpec::background(alphas);
        auto corr = bec2::loss::general_first_order(spec, theta, 0.0, N, m0, A1, A2);
        series = bec2::loss::generalized_distribution(
            corr, bec2::loss::accessible_totals(spec, N), N, m0, theta);
      }
      Table t;
      t.columns = {"m", "P0", "P1", "P_gen"};
      for (std::size_t i = 0; i < series.m_values.size(); ++i)
        t.row({double(series.m_values[i]), series.p0[i], series.p1[i],
               series.p0[i] + series.p1[i]});
      write_output(t, echo, out, format);
      return 0;
    }
  } catch (const bec2::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
