#pragma once

#include <cstddef>
#include <vector>

#include "fournls/resonance.hpp"
#include "fournls/spectrum.hpp"

namespace fournls {

/// sum_n |c_n|^2, i.e. (1/2pi) int |u|^2. The integral int |u|^2 is 2pi times this.
double mass(const FourierState& u);

/// E(u) = sum n^4 |c_n|^2 - (mu/2) sum_{n1-n2+n3-n4=0} c1 conj(c2) c3 conj(c4).
/// dc_n/dt = i dE/d(conj c_n) reproduces the full equation; E is (1/pi) times
/// the physical energy (1/2) int |u_xx|^2 - (mu/4) int |u|^4.
double hamiltonian(const FourierState& u, int sign = 1);

/// -Im int u conj(v) dx = -Im(2pi sum u_n conj(v_n)).
double symplectic_form(const FourierState& u, const FourierState& v);

/// sup_n ||c_n(t)|^2 - |c_n(0)|^2| per sample.
std::vector<double> smoothing_gap(const Trajectory& traj);

struct DyadicGapProfile {
  std::vector<int> levels;
  /// values[b][k]: block b at sample k.
  std::vector<std::vector<double>> values;
};

/// sum_{n in I_N} <n>^{2s} ||c_n(t)|^2 - |c_n(0)|^2| for every block meeting the truncation.
DyadicGapProfile dyadic_gap_profile(const Trajectory& traj, double s);

/// Im sum_{N_n} c1 conj(c2) c3 conj(c_n).
double nonresonant_quartic_im(const FourierState& u, int n);

/// d|c_n|^2/dt implied by the mode equations: 2 mu Im sum_{N_n} c1 conj(c2) c3 conj(c_n).
/// Identical for the full and Wick equations (the resonant terms are real multiples of c_n).
double energy_identity_rate(const FourierState& u, int n, int sign = 1);

/// Bound on |d^2|c_n|^2/dt^2| at this state for the full equation, assembled from
/// the resonance values and the cubic sums of every factor.
double energy_identity_curvature_bound(const FourierState& u, int n);

enum class Window { Rectangular, CosineTaper };

/// Windowed space-time field. Each mode is taken to the interaction picture of
/// the supplied phase (w_n(t) = e^{-i t mu(n)} c_n(t)) before the time DFT, so
/// the bins index the modulation variable tau - mu(n) directly.
class SpaceTimeField {
 public:
  SpaceTimeField(Trajectory traj, Window window, const ModifiedPhase& phase);

  const Trajectory& trajectory() const noexcept { return traj_; }
  Window window() const noexcept { return window_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t samples() const noexcept { return traj_.size(); }
  int n_max() const noexcept { return traj_.n_max(); }

  /// Centered modulation bins 2 pi k / (K dt), k = -floor(K/2) .. K-1-floor(K/2).
  const std::vector<double>& modulation_grid() const noexcept { return sigma_; }
  /// dt * sum_j e^{-i sigma t_j} W_j w_n(t_j), row n, column by modulation bin.
  Complex time_mode(int n, std::size_t bin) const;

 private:
  Trajectory traj_;
  Window window_;
  std::vector<double> weights_;
  std::vector<double> sigma_;
  std::vector<Complex> modes_;  // (2N+1) x K
};

/// Weight sequence for K samples. Cosine: raised-cosine ramps over the first and last 10%.
std::vector<double> window_weights(Window window, std::size_t samples);

/// (sum_n sum_k <n>^{2s} <sigma_k>^{2b} |w~(sigma_k, n)|^2 dsigma/2pi)^{1/2}, built from a
/// trajectory with the phase relative to which the modulation is measured. The
/// plain phase gives the X^{s,b} estimate, a data-adapted phase the Y^{s,b} one.
double ysb_norm(const Trajectory& traj, double s, double b, const ModifiedPhase& phase,
                Window window = Window::CosineTaper);
double ysb_norm(const SpaceTimeField& field, double s, double b);

/// (sum_n <n>^{2s} (sum_k |w~(sigma_k,n)| dsigma / 2pi)^2)^{1/2}.
double z_component(const SpaceTimeField& field, double s);

/// sum_n <n>^{2s} dt sum_j W_j^2 |c_n(t_j)|^2: the b = 0 value predicted by Parseval in time.
double time_parseval_norm_sq(const Trajectory& traj, double s, Window window);

inline constexpr std::size_t kMinSpaceTimeSamples = 8;

}  // namespace fournls
