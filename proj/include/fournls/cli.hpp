#pragma once

// Command-line front end. Every subcommand option can also be given in an
// INI-style config file (--config path) under a section named after the
// subcommand; command-line flags win over file keys.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fournls/dynamics.hpp"
#include "fournls/experiments.hpp"
#include "fournls/report.hpp"

namespace fournls::cli {

enum class OutputFormat { Json, Csv, Both };

struct RunConfig {
  std::string subcommand;

  std::string equation = "full";  // full | wick
  int sign = 1;
  bool linear_only = false;

  int n_max = 16;
  std::string scheme = "exp_rk4";  // exp_rk4 | strang
  double dt = 1e-3;
  double T = 1.0;
  std::optional<int> truncation;
  std::size_t stride = 1;

  std::string profile = "exp_decay";  // exp_decay | power_decay | single_mode | explicit
  double amplitude = 1.0;
  double decay = 0.25;
  int mode = 1;
  std::string input;             // state file (explicit profile / u_star)
  std::string trajectory_input;  // norms: existing trajectory file

  // experiments
  std::vector<int> ladder;
  int ref_factor = 4;
  double perturbation_norm = 0.1;
  std::size_t trials = 4;
  double R = 1.0, r = 0.5, epsilon = 0.1;
  int n0 = 1;
  double z_re = 0.0, z_im = 0.0;
  std::size_t samples = 64;

  // norms
  double s = 0.0, b = 0.5;
  std::string window = "cosine";  // cosine | rectangular

  // resonance table
  int box = 8;
  std::string out_file;

  std::uint64_t seed = 0;
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::Both;
  bool deterministic = false;

  EquationKind equation_kind() const;
  IntegratorSpec integrator() const;
  ProfileSpec profile_spec() const;
  Json to_json() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;

/// Parses flags (and the optional config file). Returns the exit code on
/// failure or when help was requested, after printing to err/out.
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;
};
ParseResult parse_config(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs a validated config. Exit codes: 0 ok, 1 configuration error, 2 numeric failure.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fournls::cli
