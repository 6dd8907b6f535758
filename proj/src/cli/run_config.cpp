#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "mfbath/cli.hpp"
#include "mfbath/error.hpp"

namespace mfbath::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  v = trim(v);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw InvalidParams("bad number for " + std::string(key) + ": '" + std::string(v) + "'");
  return x;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view v) {
  v = trim(v);
  Int x{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw InvalidParams("bad integer for " + std::string(key) + ": '" + std::string(v) + "'");
  return x;
}

std::vector<double> parse_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  v = trim(v);
  if (v.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = v.find(',', start);
    out.push_back(parse_double(key, v.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw InvalidParams("bad boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += format_double(xs[i]);
  }
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParams(what);
}

// Ordered key/value pairs shared by the config file and the CSV header.
std::vector<std::pair<std::string, std::string>> fields(const RunConfig& c, bool with_output) {
  std::vector<std::pair<std::string, std::string>> f;
  f.emplace_back("subcommand", subcommand_name(c.cmd));
  f.emplace_back("J", format_double(c.J));
  f.emplace_back("w", format_double(c.w));
  if (!c.T_over_Tc.empty())
    f.emplace_back("T_over_Tc", join(c.T_over_Tc));
  else
    f.emplace_back("T", join(c.T));
  f.emplace_back("J0", format_double(c.J0));
  f.emplace_back("xi0", format_double(c.xi0));
  f.emplace_back("mu0", format_double(c.mu0));
  if (c.amplitudes)
    f.emplace_back("amplitudes", join({(*c.amplitudes)[0], (*c.amplitudes)[1], (*c.amplitudes)[2],
                                       (*c.amplitudes)[3]}));
  else
    f.emplace_back("case", std::to_string(c.case_id));
  f.emplace_back("mode", c.mode == ModeKind::finite ? "finite" : "asymptotic");
  f.emplace_back("N", std::to_string(c.N));
  f.emplace_back("t_max", format_double(c.t_max));
  f.emplace_back("points", std::to_string(c.points));
  if (c.cmd == Subcommand::verify) f.emplace_back("extended", c.extended ? "true" : "false");
  if (with_output && !c.out.empty()) f.emplace_back("out", c.out);
  return f;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string subcommand_name(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::phase: return "phase";
    case Subcommand::coherence: return "coherence";
    case Subcommand::concurrence: return "concurrence";
    case Subcommand::fig1: return "fig1";
    case Subcommand::fig2: return "fig2";
    case Subcommand::verify: return "verify";
  }
  return "unknown";
}

std::optional<Subcommand> parse_subcommand(std::string_view name) {
  for (auto cmd : {Subcommand::phase, Subcommand::coherence, Subcommand::concurrence,
                   Subcommand::fig1, Subcommand::fig2, Subcommand::verify})
    if (subcommand_name(cmd) == name) return cmd;
  return std::nullopt;
}

void RunConfig::validate() const {
  require(std::isfinite(J) && J >= 0.0, "J must be finite and >= 0");
  require(std::isfinite(w) && w >= 0.0, "w must be finite and >= 0");
  require(!T.empty() || !T_over_Tc.empty(), "no temperature given");
  for (double x : T_over_Tc) require(std::isfinite(x) && x > 0.0, "T/Tc must be finite and > 0");
  if (!T_over_Tc.empty()) require(J > 0.0, "T/Tc needs J > 0");
  for (double x : temperatures()) BathParams{J, w, x}.validate();
  SystemParams{J0, mu0, xi0}.validate();
  require(case_id >= 1 && case_id <= 4, "case must be 1, 2, 3 or 4");
  if (amplitudes)
    for (double a : *amplitudes) require(std::isfinite(a), "amplitudes must be finite");
  (void)initial_state();
  require(N >= 1, "N must be >= 1");
  require(std::isfinite(t_max) && t_max > 0.0, "t-max must be finite and > 0");
  require(points >= 2, "points must be >= 2");
  const bool single = cmd == Subcommand::coherence || cmd == Subcommand::concurrence ||
                      cmd == Subcommand::fig2;
  if (single) require(temperatures().size() == 1, subcommand_name(cmd) + " takes one temperature");
}

std::vector<double> RunConfig::temperatures() const {
  if (T_over_Tc.empty()) return T;
  std::vector<double> out;
  out.reserve(T_over_Tc.size());
  for (double x : T_over_Tc) out.push_back(x * critical_temperature(J));
  return out;
}

std::vector<double> RunConfig::time_grid() const {
  const double end = J0 > 0.0 ? t_max / J0 : t_max;
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[i] = end * i / (points - 1);
  return t;
}

PureState2Q RunConfig::initial_state() const {
  if (!amplitudes) return case_state(case_id);
  const auto& a = *amplitudes;
  return PureState2Q::normalized({a[0], a[1], a[2], a[3]});
}

Mode RunConfig::dephasing_mode() const {
  if (mode == ModeKind::finite) return FiniteMode{N};
  return AsymptoticMode{};
}

RunConfig preset(Subcommand cmd) {
  RunConfig c;
  c.cmd = cmd;
  switch (cmd) {
    case Subcommand::phase:
      for (int i = 1; i <= 20; ++i) c.T_over_Tc.push_back(i / 20.0);
      break;
    case Subcommand::coherence:
      c.T_over_Tc = {0.5};
      c.t_max = 30.0;
      break;
    case Subcommand::concurrence:
      c.T_over_Tc = {0.5};
      break;
    case Subcommand::fig1:
      c.T_over_Tc = {0.75, 0.5, 0.35, 0.25};
      break;
    case Subcommand::fig2:
      c.T_over_Tc = {0.25};
      c.case_id = 4;
      c.xi0 = 0.3;
      c.t_max = 100.0;
      c.points = 2001;
      break;
    case Subcommand::verify:
      c.T_over_Tc = {0.75, 0.5, 0.35, 0.25};
      c.mode = ModeKind::finite;
      c.points = 20;
      break;
  }
  return c;
}

std::string to_config_text(const RunConfig& c) {
  std::string s;
  for (const auto& [k, v] : fields(c, true)) s += k + "=" + v + "\n";
  return s;
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  RunConfig c = std::move(base);
  while (std::getline(in, line)) {
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw InvalidParams("config line without '=': " + line);
    const std::string key{trim(l.substr(0, eq))};
    const std::string_view v = trim(l.substr(eq + 1));
    if (key == "subcommand") {
      const auto cmd = parse_subcommand(v);
      if (!cmd) throw InvalidParams("unknown subcommand '" + std::string(v) + "'");
      c.cmd = *cmd;
    } else if (key == "J") {
      c.J = parse_double(key, v);
    } else if (key == "w") {
      c.w = parse_double(key, v);
    } else if (key == "T") {
      c.T = parse_list(key, v);
      c.T_over_Tc.clear();
    } else if (key == "T_over_Tc") {
      c.T_over_Tc = parse_list(key, v);
      c.T.clear();
    } else if (key == "J0") {
      c.J0 = parse_double(key, v);
    } else if (key == "xi0") {
      c.xi0 = parse_double(key, v);
    } else if (key == "mu0") {
      c.mu0 = parse_double(key, v);
    } else if (key == "case") {
      c.case_id = parse_int<int>(key, v);
      c.amplitudes.reset();
    } else if (key == "amplitudes") {
      const auto a = parse_list(key, v);
      if (a.size() != 4) throw InvalidParams("amplitudes needs four values");
      c.amplitudes = std::array<double, 4>{a[0], a[1], a[2], a[3]};
    } else if (key == "mode") {
      if (v == "finite")
        c.mode = ModeKind::finite;
      else if (v == "asymptotic")
        c.mode = ModeKind::asymptotic;
      else
        throw InvalidParams("mode must be finite or asymptotic");
    } else if (key == "N") {
      c.N = parse_int<std::uint64_t>(key, v);
    } else if (key == "t_max") {
      c.t_max = parse_double(key, v);
    } else if (key == "points") {
      c.points = parse_int<int>(key, v);
    } else if (key == "out") {
      c.out = std::string(v);
    } else if (key == "extended") {
      c.extended = parse_bool(key, v);
    } else {
      throw InvalidParams("unknown config key '" + key + "'");
    }
  }
  return c;
}

std::string csv_header(const RunConfig& c) {
  std::string s = "#";
  for (const auto& [k, v] : fields(c, false)) s += " " + k + "=" + v;
  return s + "\n";
}

}  // namespace mfbath::cli
