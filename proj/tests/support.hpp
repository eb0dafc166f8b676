#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "fournls/diagnostics.hpp"
#include "fournls/spectrum.hpp"

namespace testing {

using fournls::Complex;
using fournls::FourierState;

// Gaussian amplitudes on |n| <= support with an e^{-decay|n|} envelope, scaled to l2 norm `norm`.
inline FourierState random_state(int n_max, unsigned long seed, double norm = 1.0, double decay = 0.0,
                                 int support = -1) {
  if (support < 0) support = n_max;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss;
  FourierState u(n_max);
  for (int n = -support; n <= support; ++n)
    u[n] = Complex(gauss(gen), gauss(gen)) * std::exp(-decay * std::abs(n));
  const double m = std::sqrt(fournls::mass(u));
  if (m > 0)
    for (auto& c : u.coeffs()) c *= norm / m;
  return u;
}

inline double max_abs_diff(const FourierState& a, const FourierState& b) {
  double worst = 0.0;
  const int r = std::max(a.n_max(), b.n_max());
  for (int n = -r; n <= r; ++n) worst = std::max(worst, std::abs(a.at(n) - b.at(n)));
  return worst;
}

inline double l2_diff(const FourierState& a, const FourierState& b) {
  double acc = 0.0;
  const int r = std::max(a.n_max(), b.n_max());
  for (int n = -r; n <= r; ++n) acc += std::norm(a.at(n) - b.at(n));
  return std::sqrt(acc);
}

}  // namespace testing
