#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfbath/dephasing.hpp"
#include "mfbath/mean_field.hpp"
#include "mfbath/two_qubit.hpp"

namespace mfbath::cli {

enum class Subcommand { phase, coherence, concurrence, fig1, fig2, verify };
enum class ModeKind { finite, asymptotic };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalid = 2;

struct RunConfig {
  Subcommand cmd = Subcommand::concurrence;
  double J = 2.0;
  double w = 0.1;
  /// Absolute temperatures. Ignored when T_over_Tc is non-empty.
  std::vector<double> T;
  std::vector<double> T_over_Tc;
  double J0 = 1.0;
  double xi0 = 0.0;
  double mu0 = 0.0;
  int case_id = 2;
  /// Real amplitudes of |00>, |01>, |10>, |11>; override case_id.
  std::optional<std::array<double, 4>> amplitudes;
  ModeKind mode = ModeKind::asymptotic;
  std::uint64_t N = 1000000;
  /// Grid end in units of 1/J0 (raw time when J0 = 0).
  double t_max = 8.0;
  int points = 200;
  std::string out;
  bool extended = false;
  /// Negative control for verify: perturbs the closed-form coefficients.
  bool corrupt = false;

  /// Throws InvalidParams.
  void validate() const;
  /// Temperatures in absolute units, converted through Tc = J/2.
  std::vector<double> temperatures() const;
  std::vector<double> time_grid() const;
  PureState2Q initial_state() const;
  Mode dephasing_mode() const;
};

/// Defaults of a subcommand before any config file or flag is applied.
RunConfig preset(Subcommand cmd);

/// key=value lines; parse_config_text(to_config_text(c)) reproduces c.
std::string to_config_text(const RunConfig& c);
/// Applies the keys found in `text` on top of `base`. Unknown keys and
/// malformed values throw InvalidParams.
RunConfig parse_config_text(std::string_view text, RunConfig base);

/// `# key=value ...` line heading every CSV.
std::string csv_header(const RunConfig& c);

std::string subcommand_name(Subcommand cmd);
std::optional<Subcommand> parse_subcommand(std::string_view name);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

std::string cmd_phase(const RunConfig& c);
std::string cmd_coherence(const RunConfig& c);
std::string cmd_concurrence(const RunConfig& c);

struct NamedCsv {
  std::string name;
  std::string csv;
};
/// One CSV per temperature curve.
std::vector<NamedCsv> cmd_fig1(const RunConfig& c);
NamedCsv cmd_fig2(const RunConfig& c);

struct VerifyReport {
  std::string text;
  bool passed = false;
};
VerifyReport cmd_verify(const RunConfig& c);

/// Full driver: argv without the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfbath::cli
