#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mfbath/cli.hpp"
#include "mfbath/entanglement.hpp"
#include "mfbath/error.hpp"
#include "mfbath/oracle.hpp"

namespace mfbath::cli {

namespace {

constexpr double kVerifyTol = 1e-10;

std::string row(std::initializer_list<double> xs) {
  std::string s;
  for (double x : xs) {
    if (!s.empty()) s += ',';
    s += format_double(x);
  }
  return s + "\n";
}

BathParams bath_at(const RunConfig& c, double T) { return {c.J, c.w, T}; }
SystemParams system_of(const RunConfig& c) { return {c.J0, c.mu0, c.xi0}; }

RunConfig single_curve(const RunConfig& c, double T_over_Tc) {
  RunConfig one = c;
  one.T_over_Tc = {T_over_Tc};
  one.T.clear();
  return one;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidParams("cannot write " + path.string());
  f << text;
}

}  // namespace

std::string cmd_phase(const RunConfig& c) {
  c.validate();
  const auto temps = c.temperatures();
  const double tc = critical_temperature(c.J);
  std::string s = csv_header(c) + "T,T_over_Tc,theta,m,phase\n";
  for (const auto& p : order_parameter_sweep({c.J, c.w, 1.0}, temps)) {
    s += format_double(p.T) + "," + format_double(p.T / tc) + "," + format_double(p.solution.theta) +
         "," + format_double(p.solution.m) + "," + (p.solution.ordered() ? "ordered" : "disordered") +
         "\n";
  }
  return s;
}

std::string cmd_coherence(const RunConfig& c) {
  c.validate();
  const BathParams bath = bath_at(c, c.temperatures().front());
  const SystemParams sys = system_of(c);
  const OrderSolution sol = solve_order(bath);
  const double tau = c.J0 > 0.0 ? coherence_time(sol, bath, sys) : INFINITY;
  std::string s = csv_header(c) + "t,J0_t,re_r,im_r,abs_r,abs_r_asymptotic,tau\n";
  for (double t : c.time_grid()) {
    const cdouble r = coherence_factor_finite(t, c.N, sol, bath, sys, {.include_free_phase = true});
    s += row({t, c.J0 * t, r.real(), r.imag(), std::abs(r),
              coherence_magnitude_asymptotic(t, sol, bath, sys), tau});
  }
  return s;
}

std::string cmd_concurrence(const RunConfig& c) {
  c.validate();
  const BathParams bath = bath_at(c, c.temperatures().front());
  const SystemParams sys = system_of(c);
  const OrderSolution sol = solve_order(bath);
  const PureState2Q state = c.initial_state();
  const bool no_bath_column = !c.amplitudes && c.case_id == 4;
  const auto times = c.time_grid();
  const auto coeffs = dephasing_series(times, c.dephasing_mode(), sol, bath, sys);

  std::string s = csv_header(c) + "t,J0_t,C,abs_A,abs_B";
  s += no_bath_column ? ",C_no_bath\n" : "\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const double C = concurrence(evolve_reduced(state, t, c.xi0, coeffs[k])).c;
    std::string line = row({t, c.J0 * t, C, std::abs(coeffs[k].A), std::abs(coeffs[k].B)});
    if (no_bath_column) {
      line.pop_back();
      line += "," + format_double(std::abs(std::sin(c.xi0 * t / 2.0))) + "\n";
    }
    s += line;
  }
  return s;
}

std::vector<NamedCsv> cmd_fig1(const RunConfig& c) {
  c.validate();
  std::vector<NamedCsv> out;
  if (c.T_over_Tc.empty()) {
    for (double T : c.T) {
      RunConfig one = c;
      one.T = {T};
      out.push_back({"fig1_T_" + format_double(T) + ".csv", cmd_concurrence(one)});
    }
    return out;
  }
  for (double x : c.T_over_Tc)
    out.push_back({"fig1_T_over_Tc_" + format_double(x) + ".csv", cmd_concurrence(single_curve(c, x))});
  return out;
}

NamedCsv cmd_fig2(const RunConfig& c) { return {"fig2.csv", cmd_concurrence(c)}; }

VerifyReport cmd_verify(const RunConfig& c) {
  c.validate();
  std::vector<int> sizes{1, 2, 4, 6};
  if (c.extended) sizes.push_back(8);
  const SystemParams sys = system_of(c);
  const PureState2Q state = PureState2Q::normalized(
      {cdouble(0.3, 0.1), cdouble(0.5, -0.2), cdouble(0.4, 0.3), cdouble(-0.6, 0.2)});
  const auto times = c.time_grid();
  const double tc = critical_temperature(c.J);

  std::ostringstream rep;
  int checks = 0, failures = 0;
  double worst = 0.0;
  auto record = [&](const std::string& label, double err) {
    const bool ok = err < kVerifyTol;
    ++checks;
    if (!ok) ++failures;
    worst = std::max(worst, err);
    rep << label << " max_err=" << sci(err) << (ok ? " ok" : " FAIL") << "\n";
  };

  for (double T : c.temperatures()) {
    const BathParams bath = bath_at(c, T);
    const OrderSolution sol = solve_order(bath);
    for (int N : sizes) {
      oracle::OracleConfig cfg;
      cfg.N = N;
      cfg.bath = bath;
      cfg.sys = sys;
      cfg.state = state;
      cfg.times = times;
      cfg.order = sol;
      const auto exact = oracle::simulate_exact(cfg);
      const auto extracted = oracle::extract_coeffs(cfg);

      double e_rho = 0.0, e_coef = 0.0, e_ad = 0.0, e_dense = 0.0, e_sq = 0.0, e_sq_dense = 0.0;
      for (std::size_t k = 0; k < times.size(); ++k) {
        DephasingCoeffs dc =
            dephasing_coeffs(times[k], FiniteMode{static_cast<std::uint64_t>(N)}, sol, bath, sys);
        if (c.corrupt) dc.A *= 1.0 - 1e-6;
        const auto closed = evolve_reduced(state, times[k], sys.xi0, dc);
        e_rho = std::max(e_rho, (exact[k].rho - closed.rho).cwiseAbs().maxCoeff());
        e_coef = std::max({e_coef, std::abs(extracted[k].A - dc.A), std::abs(extracted[k].B - dc.B)});
        e_ad = std::max(e_ad, std::abs(extracted[k].A - extracted[k].D));
      }
      const auto sq = oracle::single_qubit_coherence_exact(static_cast<std::uint64_t>(N), bath, sys,
                                                           times, sol);
      for (std::size_t k = 0; k < times.size(); ++k) {
        const cdouble r = coherence_factor_finite(times[k], static_cast<std::uint64_t>(N), sol, bath,
                                                  sys, {.include_free_phase = true});
        e_sq = std::max(e_sq, std::abs(sq[k] - r));
      }
      const bool dense = N <= (c.extended ? oracle::kMaxDenseBath : 6);
      if (dense) {
        const auto d = oracle::simulate_dense(cfg);
        for (std::size_t k = 0; k < times.size(); ++k)
          e_dense = std::max(e_dense, (d.system[k].rho - exact[k].rho).cwiseAbs().maxCoeff());
        const auto sqd = oracle::single_qubit_coherence_dense(N, bath, sys, times, sol);
        for (std::size_t k = 0; k < times.size(); ++k)
          e_sq_dense = std::max(e_sq_dense, std::abs(sqd[k] - sq[k]));
      }

      const std::string tag = "T_over_Tc=" + format_double(T / tc) + " N=" + std::to_string(N) + " ";
      record(tag + "closed_form_vs_oracle", e_rho);
      record(tag + "coeffs_vs_trace_products", e_coef);
      record(tag + "A_vs_D", e_ad);
      record(tag + "single_qubit_closed_vs_oracle", e_sq);
      if (dense) {
        record(tag + "dense_vs_factorized", e_dense);
        record(tag + "single_qubit_dense_vs_factorized", e_sq_dense);
      }
    }
  }
  VerifyReport out;
  out.passed = failures == 0;
  rep << "verify: " << (out.passed ? "PASS" : "FAIL") << " (" << failures << " of " << checks
      << " checks above " << sci(kVerifyTol) << ", worst " << sci(worst) << ")\n";
  out.text = rep.str();
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qubit dephasing and entanglement in a mean-field transverse-Ising bath", "mfbath"};
  app.require_subcommand(1, 1);

  double J = 0, w = 0, J0 = 0, xi0 = 0, mu0 = 0, t_max = 0;
  std::vector<double> T, T_over_Tc, amplitudes;
  int case_id = 0, points = 0;
  std::uint64_t N = 0;
  std::string mode, out_path, config_path;
  bool extended = false, corrupt = false;

  auto* oJ = app.add_option("--J", J, "bath exchange coupling");
  auto* ow = app.add_option("--w", w, "transverse field");
  auto* oT = app.add_option("--T", T, "temperatures, comma separated")->delimiter(',');
  auto* oTr = app.add_option("--T-over-Tc", T_over_Tc, "temperatures in units of Tc = J/2")
                  ->delimiter(',');
  auto* oJ0 = app.add_option("--J0", J0, "qubit-bath coupling");
  auto* oxi = app.add_option("--xi0", xi0, "qubit-qubit Ising coupling");
  auto* omu = app.add_option("--mu0", mu0, "longitudinal field on the single qubit");
  auto* ocase = app.add_option("--case", case_id, "initial state 1..4");
  auto* oamp = app.add_option("--amplitudes", amplitudes, "a,b,c,d for |00>,|01>,|10>,|11>")
                   ->delimiter(',')
                   ->expected(4);
  auto* omode = app.add_option("--mode", mode, "finite or asymptotic")
                    ->check(CLI::IsMember({"finite", "asymptotic"}));
  auto* oN = app.add_option("--N", N, "bath size in finite mode");
  auto* otmax = app.add_option("--t-max", t_max, "grid end in units of 1/J0");
  auto* opts = app.add_option("--points", points, "number of grid points");
  auto* oout = app.add_option("--out", out_path, "output file (directory for fig1)");
  app.add_option("--config", config_path, "key=value file, overridden by flags");

  const std::pair<Subcommand, const char*> commands[] = {
      {Subcommand::phase, "order parameter over temperature"},
      {Subcommand::coherence, "single-qubit coherence factor"},
      {Subcommand::concurrence, "two-qubit concurrence for one initial state"},
      {Subcommand::fig1, "Bell-state concurrence at four temperatures"},
      {Subcommand::fig2, "concurrence generated by the qubit-qubit coupling"},
      {Subcommand::verify, "cross-check closed forms against exact simulation"},
  };
  std::vector<std::pair<CLI::App*, Subcommand>> subs;
  for (auto [cmd, about] : commands) {
    auto* sub = app.add_subcommand(subcommand_name(cmd), about);
    sub->fallthrough();
    if (cmd == Subcommand::verify) {
      sub->add_flag("--extended", extended, "add N = 8 to the dense cross-check");
      sub->add_flag("--corrupt", corrupt, "perturb the closed forms (negative control)");
    }
    subs.emplace_back(sub, cmd);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  Subcommand cmd = Subcommand::concurrence;
  for (const auto& [sub, which] : subs)
    if (sub->parsed()) cmd = which;

  try {
    RunConfig c = preset(cmd);
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw InvalidParams("cannot read config " + config_path);
      std::stringstream buf;
      buf << f.rdbuf();
      c = parse_config_text(buf.str(), c);
      c.cmd = cmd;
    }
    if (oJ->count()) c.J = J;
    if (ow->count()) c.w = w;
    if (oT->count()) {
      c.T = T;
      c.T_over_Tc.clear();
    }
    if (oTr->count()) {
      c.T_over_Tc = T_over_Tc;
      c.T.clear();
    }
    if (oJ0->count()) c.J0 = J0;
    if (oxi->count()) c.xi0 = xi0;
    if (omu->count()) c.mu0 = mu0;
    if (ocase->count()) {
      c.case_id = case_id;
      c.amplitudes.reset();
    }
    if (oamp->count()) c.amplitudes = std::array<double, 4>{amplitudes[0], amplitudes[1], amplitudes[2], amplitudes[3]};
    if (omode->count()) c.mode = mode == "finite" ? ModeKind::finite : ModeKind::asymptotic;
    if (oN->count()) c.N = N;
    if (otmax->count()) c.t_max = t_max;
    if (opts->count()) c.points = points;
    if (oout->count()) c.out = out_path;
    if (extended) c.extended = true;
    if (corrupt) c.corrupt = true;
    c.validate();

    auto emit = [&](const std::string& text) {
      if (c.out.empty())
        out << text;
      else
        write_file(c.out, text);
    };

    switch (cmd) {
      case Subcommand::phase: emit(cmd_phase(c)); break;
      case Subcommand::coherence: emit(cmd_coherence(c)); break;
      case Subcommand::concurrence: emit(cmd_concurrence(c)); break;
      case Subcommand::fig2: emit(cmd_fig2(c).csv); break;
      case Subcommand::fig1:
        for (const auto& f : cmd_fig1(c)) {
          if (c.out.empty()) {
            out << f.csv;
          } else {
            const auto path = std::filesystem::path(c.out) / f.name;
            write_file(path, f.csv);
            out << path.string() << "\n";
          }
        }
        break;
      case Subcommand::verify: {
        const auto report = cmd_verify(c);
        out << report.text;
        if (!c.out.empty()) write_file(c.out, report.text);
        return report.passed ? kExitOk : kExitVerifyFailed;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace mfbath::cli
