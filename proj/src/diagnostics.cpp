#include "fournls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fournls/dynamics.hpp"
#include "fournls/error.hpp"
#include "fournls/fft.hpp"

namespace fournls {
namespace {

double weight(int n, double s) { return s == 0.0 ? 1.0 : std::pow(1.0 + double(n) * n, s); }

void require_nonempty(const Trajectory& traj) {
  if (traj.states.empty()) throw PreconditionError("empty trajectory");
  traj.validate();
}

}  // namespace

double mass(const FourierState& u) {
  double m = 0.0;
  for (const Complex& c : u.coeffs()) m += std::norm(c);
  return m;
}

double hamiltonian(const FourierState& u, int sign) {
  double kinetic = 0.0;
  for (int n = -u.n_max(); n <= u.n_max(); ++n) {
    const double d = n;
    kinetic += d * d * d * d * std::norm(u[n]);
  }
  // sum over n1-n2+n3-n4 = 0 equals the grid mean of |u|^4 once M > 4 n_max
  const std::size_t m = padded_grid_size(u.n_max());
  const auto grid = synthesize(u, m);
  double quartic = 0.0;
  for (const Complex& z : grid) quartic += std::norm(z) * std::norm(z);
  quartic /= static_cast<double>(m);
  return kinetic - 0.5 * sign * quartic;
}

double symplectic_form(const FourierState& u, const FourierState& v) {
  if (u.n_max() != v.n_max()) throw ShapeError("symplectic form of states with different n_max");
  return -(2.0 * std::numbers::pi * inner(u, v)).imag();
}

std::vector<double> smoothing_gap(const Trajectory& traj) {
  require_nonempty(traj);
  const FourierState& u0 = traj.states.front();
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& u : traj.states) {
    double gap = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      gap = std::max(gap, std::abs(std::norm(u.coeffs()[i]) - std::norm(u0.coeffs()[i])));
    out.push_back(gap);
  }
  return out;
}

DyadicGapProfile dyadic_gap_profile(const Trajectory& traj, double s) {
  require_nonempty(traj);
  const int N = traj.n_max();
  const FourierState& u0 = traj.states.front();
  DyadicGapProfile profile;
  for (const auto& block : blocks_covering(N)) {
    profile.levels.push_back(block.level());
    std::vector<double> row;
    row.reserve(traj.size());
    for (const auto& u : traj.states) {
      double acc = 0.0;
      for (int n = -N; n <= N; ++n)
        if (block.contains(n)) acc += weight(n, s) * std::abs(std::norm(u[n]) - std::norm(u0[n]));
      row.push_back(acc);
    }
    profile.values.push_back(std::move(row));
  }
  return profile;
}

double nonresonant_quartic_im(const FourierState& u, int n) {
  const Complex cn = std::conj(u.at(n));
  Complex acc{};
  for (const auto& q : enumerate_nonresonant(n, u.n_max()))
    acc += u[q.n1] * std::conj(u[q.n2]) * u[q.n3];
  return (acc * cn).imag();
}

double energy_identity_rate(const FourierState& u, int n, int sign) {
  return 2.0 * sign * nonresonant_quartic_im(u, n);
}

double energy_identity_curvature_bound(const FourierState& u, int n) {
  const FourierState conv = cubic_convolution(u, u, u);
  const double an = std::abs(u.at(n));
  const double cn = std::abs(conv.at(n));
  double acc = 0.0;
  for (const auto& q : enumerate_nonresonant(n, u.n_max())) {
    const double a1 = std::abs(u[q.n1]), a2 = std::abs(u[q.n2]), a3 = std::abs(u[q.n3]);
    const double h = std::abs(static_cast<double>(q.h));
    acc += h * a1 * a2 * a3 * an;
    acc += std::abs(conv[q.n1]) * a2 * a3 * an + a1 * std::abs(conv[q.n2]) * a3 * an +
           a1 * a2 * std::abs(conv[q.n3]) * an + a1 * a2 * a3 * cn;
  }
  return 2.0 * acc;
}

std::vector<double> window_weights(Window window, std::size_t samples) {
  std::vector<double> w(samples, 1.0);
  if (window == Window::Rectangular || samples < 3) return w;
  const std::size_t ramp = std::max<std::size_t>(1, samples / 10);
  for (std::size_t j = 0; j < ramp; ++j) {
    const double x = (static_cast<double>(j) + 0.5) / static_cast<double>(ramp);
    const double v = 0.5 * (1.0 - std::cos(std::numbers::pi * x));
    w[j] = v;
    w[samples - 1 - j] = v;
  }
  return w;
}

SpaceTimeField::SpaceTimeField(Trajectory traj, Window window, const ModifiedPhase& phase)
    : traj_(std::move(traj)), window_(window) {
  require_nonempty(traj_);
  const std::size_t K = traj_.size();
  if (K < kMinSpaceTimeSamples)
    throw SizingError("space-time estimators need at least " +
                      std::to_string(kMinSpaceTimeSamples) + " samples, got " + std::to_string(K));
  const int N = traj_.n_max();
  if (phase.n_max() < N) throw RangeError("phase table shorter than the trajectory truncation");
  weights_ = window_weights(window, K);
  const double dt = traj_.dt;
  const auto half = static_cast<long long>(K / 2);
  sigma_.resize(K);
  for (std::size_t b = 0; b < K; ++b)
    sigma_[b] = 2.0 * std::numbers::pi * static_cast<double>(static_cast<long long>(b) - half) /
                (static_cast<double>(K) * dt);
  modes_.assign(static_cast<std::size_t>(2 * N + 1) * K, Complex{});
  std::vector<Complex> buf(K);
  for (int n = -N; n <= N; ++n) {
    const double mu = phase.value(n);
    for (std::size_t j = 0; j < K; ++j) {
      // reduce the phase mod 2 pi in long double before the large product loses bits
      const long double theta = std::fmod(static_cast<long double>(traj_.time(j)) * mu,
                                          2.0L * std::numbers::pi_v<long double>);
      buf[j] = weights_[j] * std::polar(1.0, -static_cast<double>(theta)) * traj_.states[j][n];
    }
    fft::forward(buf);
    Complex* row = &modes_[static_cast<std::size_t>(n + N) * K];
    for (std::size_t b = 0; b < K; ++b) {
      // output bin b holds DFT index k = b - half (mod K), shifted by t0
      const long long k = static_cast<long long>(b) - half;
      const std::size_t idx = static_cast<std::size_t>((k % static_cast<long long>(K) + K) % K);
      row[b] = dt * buf[idx] * std::polar(1.0, -sigma_[b] * traj_.t0);
    }
  }
}

Complex SpaceTimeField::time_mode(int n, std::size_t bin) const {
  const int N = n_max();
  return modes_[static_cast<std::size_t>(n + N) * samples() + bin];
}

double ysb_norm(const SpaceTimeField& field, double s, double b) {
  const int N = field.n_max();
  const std::size_t K = field.samples();
  const double dsigma_over_2pi = 1.0 / (static_cast<double>(K) * field.trajectory().dt);
  const auto& sigma = field.modulation_grid();
  double acc = 0.0;
  for (int n = -N; n <= N; ++n) {
    double row = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double wb = b == 0.0 ? 1.0 : std::pow(1.0 + sigma[k] * sigma[k], b);
      row += wb * std::norm(field.time_mode(n, k));
    }
    acc += weight(n, s) * row;
  }
  return std::sqrt(acc * dsigma_over_2pi);
}

double ysb_norm(const Trajectory& traj, double s, double b, const ModifiedPhase& phase,
                Window window) {
  return ysb_norm(SpaceTimeField(traj, window, phase), s, b);
}

double z_component(const SpaceTimeField& field, double s) {
  const int N = field.n_max();
  const std::size_t K = field.samples();
  const double dsigma_over_2pi = 1.0 / (static_cast<double>(K) * field.trajectory().dt);
  double acc = 0.0;
  for (int n = -N; n <= N; ++n) {
    double l1 = 0.0;
    for (std::size_t k = 0; k < K; ++k) l1 += std::abs(field.time_mode(n, k));
    l1 *= dsigma_over_2pi;
    acc += weight(n, s) * l1 * l1;
  }
  return std::sqrt(acc);
}

double time_parseval_norm_sq(const Trajectory& traj, double s, Window window) {
  require_nonempty(traj);
  const auto w = window_weights(window, traj.size());
  const int N = traj.n_max();
  double acc = 0.0;
  for (int n = -N; n <= N; ++n) {
    double row = 0.0;
    for (std::size_t j = 0; j < traj.size(); ++j) row += w[j] * w[j] * std::norm(traj.states[j][n]);
    acc += weight(n, s) * row * traj.dt;
  }
  return acc;
}

}  // namespace fournls
