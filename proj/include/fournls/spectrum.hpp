#pragma once

// Truncated Fourier representation on the 2*pi torus.
//
// Convention: u(x) = sum_n c_n e^{inx}, c_n = (1/2pi) int_0^{2pi} e^{-inx} u dx.
// Products of functions are plain convolutions of coefficients and
// (1/2pi) int |u|^2 dx = sum |c_n|^2.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fournls {

using Complex = std::complex<double>;

class FourierState {
 public:
  FourierState() : FourierState(0) {}
  explicit FourierState(int n_max);
  /// Takes ownership of 2*n_max+1 amplitudes ordered n = -n_max..n_max.
  FourierState(int n_max, std::vector<Complex> coeffs);

  int n_max() const noexcept { return n_max_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }

  bool contains(int n) const noexcept { return n >= -n_max_ && n <= n_max_; }

  /// Mode n; |n| <= n_max is the caller's responsibility.
  const Complex& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n + n_max_)]; }
  Complex& operator[](int n) { return coeffs_[static_cast<std::size_t>(n + n_max_)]; }

  /// Mode n, or zero outside the truncation.
  Complex at(int n) const noexcept { return contains(n) ? (*this)[n] : Complex{}; }

  /// Same modes re-embedded at a different truncation radius (zero-filled or cut).
  FourierState resized(int n_max) const;

  bool all_finite() const noexcept;

  /// Highest |n| carrying a nonzero amplitude (-1 for the zero state).
  int support_radius() const noexcept;

  friend bool operator==(const FourierState&, const FourierState&) = default;

 private:
  int n_max_;
  std::vector<Complex> coeffs_;
};

struct Trajectory {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<FourierState> states;

  double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
  int n_max() const { return states.empty() ? 0 : states.front().n_max(); }
  std::size_t size() const noexcept { return states.size(); }

  /// Throws PreconditionError when dt <= 0 or the states disagree on n_max.
  void validate() const;
};

/// Littlewood-Paley block: I_1 = [-1,1], I_N = [-2N,-N/2] U [N/2,2N] for N >= 2.
class DyadicBlock {
 public:
  /// level must be a power of two.
  explicit DyadicBlock(int level);

  int level() const noexcept { return level_; }
  bool contains(int n) const noexcept;
  /// Members in increasing order.
  std::vector<int> members() const;

 private:
  int level_;
};

/// All blocks {1,2,4,...} that meet [-n_max, n_max].
std::vector<DyadicBlock> blocks_covering(int n_max);

FourierState analyze(std::span<const Complex> samples, int n_max);
std::vector<Complex> synthesize(const FourierState& state, std::size_t grid_size);

FourierState project_leq(const FourierState& state, int cutoff);
FourierState project_dyadic(const FourierState& state, const DyadicBlock& block);

double hs_norm(const FourierState& state, double s);
double l2_norm(const FourierState& state);
/// sum_n u_n conj(v_n)
Complex inner(const FourierState& u, const FourierState& v);

/// Smallest 2^a 3^b 5^c 7^d >= n.
std::size_t efficient_length(std::size_t n);
/// Alias-free grid for cubic products: efficient_length(4*n_max+1).
std::size_t padded_grid_size(int n_max);

inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace fournls
