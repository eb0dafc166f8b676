#pragma once

// Empirical monitor for the dyadic trilinear gain of the non-resonant
// nonlinearity in X^{0,1/2} -> X^{0,-1/2}.
//
// Fields live on the time-periodic lattice (t in R/2piZ, so tau is an integer)
// and are stored as u~(n, n^4 + m) for modulations |m| <= L. The output of the
// non-resonant product at (n, n^4 + m) collects H(n1,n2,n3) + m1 - m2 + m3 = m,
// so every norm is evaluated exactly, with no time discretization.

#include <cstdint>
#include <vector>

#include "fournls/spectrum.hpp"

namespace fournls {

struct LatticeField {
  int max_modulation = 0;
  std::vector<int> frequencies;
  /// amplitudes[i][m + L]: mode frequencies[i] at modulation m.
  std::vector<std::vector<Complex>> amplitudes;

  /// (sum_n sum_m <m>^{2b} |u~|^2)^{1/2}
  double x_norm(double b) const;
};

/// Random complex-Gaussian field supported on the dyadic block of the given level.
LatticeField random_dyadic_field(int level, int max_modulation, std::uint64_t seed);
/// A single mode at frequency n with zero modulation.
LatticeField single_mode_field(int n, Complex amplitude);

/// ||P_{N4} N_NR(u1,u2,u3)||_{X^{0,-1/2}}
double nonresonant_output_norm(const LatticeField& u1, const LatticeField& u2,
                               const LatticeField& u3, int level4);

inline constexpr double kTrilinearExponent = -0.49;

/// Smallest dyadic level whose block holds every frequency of the field.
int dyadic_level_of(const LatticeField& f);

/// LHS / (N_max^{-0.49} prod ||u_j||_{X^{0,1/2}}); zero when any input vanishes.
double trilinear_ratio_of(const LatticeField& u1, const LatticeField& u2, const LatticeField& u3,
                          int level4);

struct TrilinearStats {
  int n_max_level = 0;
  std::size_t trials = 0;
  double exponent = kTrilinearExponent;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  std::vector<double> ratios;
};

/// Trial k draws its fields from derive_seed(seed, {k, j}); the output sum is
/// split across workers by output frequency and merged in a fixed order.
TrilinearStats trilinear_ratio(std::uint64_t seed, int level1, int level2, int level3, int level4,
                               std::size_t trials, int max_modulation = 1);

}  // namespace fournls
