#include "fournls/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "fournls/error.hpp"
#include "fournls/fft.hpp"

namespace fournls {

FourierState::FourierState(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw SizingError("n_max must be nonnegative");
  coeffs_.assign(static_cast<std::size_t>(2 * n_max + 1), Complex{});
}

FourierState::FourierState(int n_max, std::vector<Complex> coeffs)
    : n_max_(n_max), coeffs_(std::move(coeffs)) {
  if (n_max < 0) throw SizingError("n_max must be nonnegative");
  if (coeffs_.size() != static_cast<std::size_t>(2 * n_max + 1))
    throw ShapeError("expected " + std::to_string(2 * n_max + 1) + " amplitudes, got " +
                      std::to_string(coeffs_.size()));
  if (!all_finite()) throw PreconditionError("non-finite amplitude in FourierState");
}

FourierState FourierState::resized(int n_max) const {
  FourierState out(n_max);
  const int m = std::min(n_max, n_max_);
  for (int n = -m; n <= m; ++n) out[n] = (*this)[n];
  return out;
}

bool FourierState::all_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

int FourierState::support_radius() const noexcept {
  for (int r = n_max_; r >= 0; --r)
    if ((*this)[r] != Complex{} || (*this)[-r] != Complex{}) return r;
  return -1;
}

void Trajectory::validate() const {
  if (!(dt > 0.0)) throw PreconditionError("trajectory dt must be positive");
  for (const auto& s : states)
    if (s.n_max() != states.front().n_max())
      throw PreconditionError("trajectory states disagree on n_max");
}

DyadicBlock::DyadicBlock(int level) : level_(level) {
  if (level < 1 || !std::has_single_bit(static_cast<unsigned>(level)))
    throw RangeError("dyadic level must be a power of two, got " + std::to_string(level));
}

bool DyadicBlock::contains(int n) const noexcept {
  const int a = n < 0 ? -n : n;
  if (level_ == 1) return a <= 1;
  // N/2 <= |n| <= 2N
  return 2 * a >= level_ && a <= 2 * level_;
}

std::vector<int> DyadicBlock::members() const {
  std::vector<int> out;
  const int hi = level_ == 1 ? 1 : 2 * level_;
  for (int n = -hi; n <= hi; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

std::vector<DyadicBlock> blocks_covering(int n_max) {
  std::vector<DyadicBlock> out;
  out.emplace_back(1);
  for (int level = 2; level / 2 <= n_max; level *= 2) out.emplace_back(level);
  return out;
}

namespace {

std::size_t wrap(int n, std::size_t m) {
  const auto mm = static_cast<long long>(m);
  return static_cast<std::size_t>(((n % mm) + mm) % mm);
}

}  // namespace

FourierState analyze(std::span<const Complex> samples, int n_max) {
  const std::size_t m = samples.size();
  if (m < static_cast<std::size_t>(2 * n_max + 1))
    throw SizingError("grid of " + std::to_string(m) + " points cannot resolve n_max=" +
                      std::to_string(n_max));
  std::vector<Complex> buf(samples.begin(), samples.end());
  fft::forward(buf);
  FourierState out(n_max);
  const double scale = 1.0 / static_cast<double>(m);
  for (int n = -n_max; n <= n_max; ++n) out[n] = buf[wrap(n, m)] * scale;
  return out;
}

std::vector<Complex> synthesize(const FourierState& state, std::size_t grid_size) {
  const int n_max = state.n_max();
  if (grid_size < static_cast<std::size_t>(2 * n_max + 1))
    throw SizingError("grid of " + std::to_string(grid_size) +
                      " points cannot hold n_max=" + std::to_string(n_max));
  std::vector<Complex> buf(grid_size, Complex{});
  for (int n = -n_max; n <= n_max; ++n) buf[wrap(n, grid_size)] = state[n];
  fft::backward(buf);
  return buf;
}

FourierState project_leq(const FourierState& state, int cutoff) {
  if (cutoff < 0) throw RangeError("projection cutoff must be nonnegative");
  FourierState out = state;
  for (int n = -state.n_max(); n <= state.n_max(); ++n)
    if (std::abs(n) > cutoff) out[n] = Complex{};
  return out;
}

FourierState project_dyadic(const FourierState& state, const DyadicBlock& block) {
  FourierState out = state;
  for (int n = -state.n_max(); n <= state.n_max(); ++n)
    if (!block.contains(n)) out[n] = Complex{};
  return out;
}

double hs_norm(const FourierState& state, double s) {
  double acc = 0.0;
  for (int n = -state.n_max(); n <= state.n_max(); ++n) {
    const double w = s == 0.0 ? 1.0 : std::pow(1.0 + double(n) * n, s);
    acc += w * std::norm(state[n]);
  }
  return std::sqrt(acc);
}

double l2_norm(const FourierState& state) { return hs_norm(state, 0.0); }

Complex inner(const FourierState& u, const FourierState& v) {
  if (u.n_max() != v.n_max()) throw ShapeError("inner product of states with different n_max");
  Complex acc{};
  for (std::size_t i = 0; i < u.size(); ++i) acc += u.coeffs()[i] * std::conj(v.coeffs()[i]);
  return acc;
}

std::size_t efficient_length(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

std::size_t padded_grid_size(int n_max) {
  return efficient_length(static_cast<std::size_t>(4 * n_max + 1));
}

}  // namespace fournls
