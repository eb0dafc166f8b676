#pragma once

// Desk-scale drivers for the truncated-flow approximation program and the
// non-squeezing witness search. Every driver echoes its full configuration
// into the report; fixed seeds and fixed merge order make reruns bit-identical.

#include <cstdint>
#include <optional>
#include <vector>

#include "fournls/dynamics.hpp"
#include "fournls/report.hpp"
#include "fournls/spectrum.hpp"

namespace fournls {

enum class ProfileKind { ExpDecay, PowerDecay, SingleMode, Explicit };

struct ProfileSpec {
  ProfileKind kind = ProfileKind::ExpDecay;
  /// l2 norm of the untruncated profile (SingleMode: the mode amplitude).
  double amplitude = 1.0;
  /// ExpDecay: c_n ~ e^{-decay |n|}; PowerDecay: c_n ~ <n>^{-decay} (decay > 1/2).
  double decay = 0.25;
  int mode = 1;
  std::uint64_t seed = 0;
  std::optional<FourierState> explicit_state;

  void validate() const;
};

/// Modes |n| <= n_max of the profile. Phases depend only on (seed, n), so
/// generate(p, N) == project_leq(generate(p, M), N) for N <= M.
FourierState generate_profile(const ProfileSpec& profile, int n_max);

Json to_json(const ProfileSpec& profile);
Json to_json(const IntegratorSpec& spec);
Json to_json(const EquationKind& kind);

struct ApproximationConfig {
  ProfileSpec profile;
  std::vector<int> ladder{16, 32, 64, 128};
  int ref_factor = 4;
  double T = 0.5;
  double dt = 5e-4;
  Scheme scheme = Scheme::ExpRK4;
  EquationKind kind = EquationKind::full();
  /// Repeat the smallest rung against a 2*ref_factor reference.
  bool richardson_check = true;
};

/// error(N) = sup_t ||P_{<=floor(sqrt N)} (Phi^{ref_factor N}(t) - Phi^N(t)) P_{<=N} u0||.
ExperimentReport run_approximation_study(const ApproximationConfig& config);

struct PerturbationConfig {
  ProfileSpec profile;
  std::vector<int> ladder{16, 32, 64};
  double perturbation_norm = 0.1;
  double T = 0.5;
  double dt = 5e-4;
  Scheme scheme = Scheme::ExpRK4;
  EquationKind kind = EquationKind::full();
  std::size_t trials = 4;
  std::uint64_t seed = 0;
};

/// Random perturbation supported in cutoff < |n| <= n_max with the given l2 norm.
FourierState high_frequency_perturbation(int cutoff, int n_max, double norm, std::uint64_t seed);
/// Throws PreconditionError if the perturbation touches |n| <= cutoff.
void check_high_frequency(const FourierState& perturbation, int cutoff);

/// Low-frequency divergence sup_t ||P_{<=N'-sqrt N'}(Phi(t)u0 - Phi(t)(u0 + p))||
/// at resolution 2N' for random high-frequency perturbations p.
ExperimentReport run_perturbation_study(const PerturbationConfig& config);

struct SqueezeConfig {
  FourierState u_star;
  double R = 1.0;
  double r = 0.5;
  double epsilon = 0.1;
  int n0 = 1;
  Complex z{0.0, 0.0};
  double T = 0.3;
  int N = 16;
  double dt = 1e-3;
  std::size_t samples = 64;
  Scheme scheme = Scheme::ExpRK4;
  EquationKind kind = EquationKind::full();
  std::uint64_t seed = 0;

  void validate() const;
};

enum class ProbeFamily { PhaseSweep = 0, RandomSphere = 1, Interior = 2 };

/// Samples u0 = P_{<=N} u* + rho d and records margin = |F[Phi^N(T) u0](n0) - z| - r.
/// A positive best margin is a witness for this (N, T); a negative one only
/// means none was found among the samples.
ExperimentReport run_squeeze_probe(const SqueezeConfig& config);

}  // namespace fournls
