#include "fournls/dynamics.hpp"

#include <cmath>
#include <string>

#include "fournls/error.hpp"
#include "fournls/fft.hpp"

namespace fournls {
namespace {

constexpr Complex kI{0.0, 1.0};

double mass_of(const FourierState& u) {
  double m = 0.0;
  for (const Complex& c : u.coeffs()) m += std::norm(c);
  return m;
}

std::size_t wrap(int n, std::size_t m) {
  const auto mm = static_cast<long long>(m);
  return static_cast<std::size_t>(((n % mm) + mm) % mm);
}

double quartic(int n) {
  const double d = n;
  return d * d * d * d;
}

// |u|^2 u on radius-r data (embedded in a larger state) written to out at radius r.
void cubic_self_into(const FourierState& u, int r, std::vector<Complex>& buf, FourierState& out) {
  const std::size_t m = buf.size();
  std::fill(buf.begin(), buf.end(), Complex{});
  for (int n = -r; n <= r; ++n) buf[wrap(n, m)] = u[n];
  fft::backward(buf);
  for (Complex& z : buf) z *= std::norm(z);
  fft::forward(buf);
  const double scale = 1.0 / static_cast<double>(m);
  std::fill(out.coeffs().begin(), out.coeffs().end(), Complex{});
  for (int n = -r; n <= r; ++n) out[n] = buf[wrap(n, m)] * scale;
}

}  // namespace

void EquationKind::validate() const {
  if (sign != 1 && sign != -1)
    throw RangeError("nonlinearity sign must be +1 or -1, got " + std::to_string(sign));
}

void IntegratorSpec::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw RangeError("dt must be positive and finite");
  if (truncation && *truncation < 0) throw RangeError("truncation must be nonnegative");
}

void IntegratorSpec::validate_for(const FourierState& u) const {
  validate();
  if (!truncation) return;
  if (*truncation > u.n_max())
    throw PreconditionError("truncation " + std::to_string(*truncation) + " exceeds n_max " +
                            std::to_string(u.n_max()));
  if (u.support_radius() > *truncation)
    throw PreconditionError("truncated run requires data supported in |n| <= " +
                            std::to_string(*truncation));
}

FourierState cubic_convolution(const FourierState& u, const FourierState& v,
                               const FourierState& w) {
  if (u.n_max() != v.n_max() || u.n_max() != w.n_max())
    throw ShapeError("cubic_convolution operands differ in n_max");
  const int n_max = u.n_max();
  const std::size_t m = padded_grid_size(n_max);
  auto pu = synthesize(u, m);
  auto pv = synthesize(v, m);
  auto pw = synthesize(w, m);
  for (std::size_t j = 0; j < m; ++j) pu[j] = pu[j] * std::conj(pv[j]) * pw[j];
  return analyze(pu, n_max);
}

FourierState nonlinearity_resonant(const FourierState& u) {
  const double m = mass_of(u);
  FourierState out(u.n_max());
  for (int n = -u.n_max(); n <= u.n_max(); ++n)
    out[n] = kI * std::norm(u[n]) * u[n] - 2.0 * kI * m * u[n];
  return out;
}

FourierState nonlinearity_nonresonant(const FourierState& u) {
  FourierState conv = cubic_convolution(u, u, u);
  const FourierState res = nonlinearity_resonant(u);
  for (int n = -u.n_max(); n <= u.n_max(); ++n) conv[n] = -kI * conv[n] - res[n];
  return conv;
}

FourierState rhs(const FourierState& u, const EquationKind& kind, std::optional<int> truncation) {
  if (truncation) {
    if (*truncation < 0 || *truncation > u.n_max())
      throw PreconditionError("truncation outside [0, n_max]");
    if (u.support_radius() > *truncation)
      throw PreconditionError("truncated rhs requires data supported in |n| <= " +
                              std::to_string(*truncation));
  }
  const double mu = kind.coupling();
  const FourierState conv = cubic_convolution(u, u, u);
  const double m = mass_of(u);
  const int cut = truncation.value_or(u.n_max());
  FourierState out(u.n_max());
  for (int n = -u.n_max(); n <= u.n_max(); ++n) {
    Complex nl = -kI * mu * conv[n];
    if (kind.equation == Equation::Wick4WNLS) nl += 2.0 * kI * mu * m * u[n];
    if (std::abs(n) > cut) nl = Complex{};
    out[n] = kI * quartic(n) * u[n] + nl;
  }
  return out;
}

Stepper::Stepper(int n_max, const IntegratorSpec& spec, const EquationKind& kind)
    : n_max_(n_max),
      radius_(spec.truncation.value_or(n_max)),
      spec_(spec),
      kind_(kind),
      k1_(n_max),
      k2_(n_max),
      k3_(n_max),
      k4_(n_max),
      tmp_(n_max) {
  spec.validate();
  kind.validate();
  if (radius_ > n_max) throw PreconditionError("truncation exceeds n_max");
  // RK4 evaluates alias-free products at the truncation radius; Strang works on
  // the collocation grid, where the transform is a bijection and each substep
  // is an exact l2 isometry.
  grid_ = spec.scheme == Scheme::ExpRK4 ? padded_grid_size(radius_)
                                        : static_cast<std::size_t>(2 * n_max + 1);
  buf_.assign(grid_, Complex{});
}

void Stepper::nonlinear(const FourierState& c, FourierState& out) {
  const double mu = kind_.coupling();
  if (mu == 0.0) {
    std::fill(out.coeffs().begin(), out.coeffs().end(), Complex{});
    return;
  }
  cubic_self_into(c, radius_, buf_, out);
  double m = 0.0;
  if (kind_.equation == Equation::Wick4WNLS)
    for (int n = -radius_; n <= radius_; ++n) m += std::norm(c[n]);
  for (int n = -radius_; n <= radius_; ++n) {
    Complex v = -kI * mu * out[n];
    if (kind_.equation == Equation::Wick4WNLS) v += 2.0 * kI * mu * m * c[n];
    out[n] = v;
  }
}

void Stepper::linear_phase(FourierState& c, double h) const {
  for (int n = -n_max_; n <= n_max_; ++n) c[n] *= std::polar(1.0, quartic(n) * h);
}

// Lawson RK4: classical RK4 in the interaction picture a = e^{-i t n^4} c,
// re-anchored at the start of every step.
void Stepper::rk4(FourierState& c, double h) {
  const int r = radius_;
  const double half = 0.5 * h;
  nonlinear(c, k1_);
  for (int n = -r; n <= r; ++n) tmp_[n] = std::polar(1.0, quartic(n) * half) * (c[n] + half * k1_[n]);
  nonlinear(tmp_, k2_);
  for (int n = -r; n <= r; ++n) tmp_[n] = std::polar(1.0, quartic(n) * half) * c[n] + half * k2_[n];
  nonlinear(tmp_, k3_);
  for (int n = -r; n <= r; ++n) {
    const Complex e = std::polar(1.0, quartic(n) * half);
    tmp_[n] = e * e * c[n] + h * e * k3_[n];
  }
  nonlinear(tmp_, k4_);
  for (int n = -r; n <= r; ++n) {
    const Complex e = std::polar(1.0, quartic(n) * half);
    const Complex e2 = e * e;
    c[n] = e2 * c[n] + (h / 6.0) * (e2 * k1_[n] + 2.0 * e * (k2_[n] + k3_[n]) + k4_[n]);
  }
  // modes beyond the truncation are identically zero; leave them untouched
}

void Stepper::strang(FourierState& c, double h) {
  linear_phase(c, 0.5 * h);
  const double mu = kind_.coupling();
  if (mu != 0.0) {
    const std::size_t m = grid_;
    std::fill(buf_.begin(), buf_.end(), Complex{});
    for (int n = -n_max_; n <= n_max_; ++n) buf_[wrap(n, m)] = c[n];
    fft::backward(buf_);
    double wick = 0.0;
    if (kind_.equation == Equation::Wick4WNLS) wick = 2.0 * mu * mass_of(c) * h;
    for (Complex& z : buf_) z *= std::polar(1.0, -mu * std::norm(z) * h + wick);
    fft::forward(buf_);
    const double scale = 1.0 / static_cast<double>(m);
    for (int n = -n_max_; n <= n_max_; ++n)
      c[n] = std::abs(n) <= radius_ ? buf_[wrap(n, m)] * scale : Complex{};
  }
  linear_phase(c, 0.5 * h);
}

void Stepper::advance(FourierState& c, double h) {
  if (c.n_max() != n_max_) throw ShapeError("stepper built for a different n_max");
  if (spec_.scheme == Scheme::ExpRK4)
    rk4(c, h);
  else
    strang(c, h);
}

FourierState step(const FourierState& u, const IntegratorSpec& spec, const EquationKind& kind,
                  std::size_t step_index) {
  spec.validate_for(u);
  Stepper stepper(u.n_max(), spec, kind);
  FourierState out = u;
  stepper.advance(out, spec.dt);
  if (!out.all_finite()) throw NumericFailure(step_index, "non-finite amplitude");
  return out;
}

std::size_t step_count(double T, double dt) {
  const double ratio = std::abs(T) / dt;
  const double k = std::round(ratio);
  if (std::abs(k * dt - std::abs(T)) > 1e-12 * std::max(1.0, std::abs(T)))
    throw PreconditionError("T must be an integer multiple of dt");
  return static_cast<std::size_t>(k);
}

Trajectory integrate(const FourierState& u0, double T, const IntegratorSpec& spec,
                     const EquationKind& kind, std::size_t sample_stride) {
  spec.validate_for(u0);
  if (sample_stride < 1) throw RangeError("sample stride must be >= 1");
  if (T < 0.0) throw PreconditionError("integrate runs forward; use evolve for negative T");
  const std::size_t steps = step_count(T, spec.dt);
  if (steps % sample_stride != 0)
    throw PreconditionError("step count must be a multiple of the sample stride");
  Trajectory traj;
  traj.t0 = 0.0;
  traj.dt = spec.dt * static_cast<double>(sample_stride);
  traj.states.reserve(steps / sample_stride + 1);
  traj.states.push_back(u0);
  Stepper stepper(u0.n_max(), spec, kind);
  FourierState c = u0;
  for (std::size_t k = 1; k <= steps; ++k) {
    stepper.advance(c, spec.dt);
    if (!c.all_finite()) throw NumericFailure(k - 1, "non-finite amplitude");
    if (k % sample_stride == 0) traj.states.push_back(c);
  }
  return traj;
}

FourierState evolve(const FourierState& u0, double T, const IntegratorSpec& spec,
                    const EquationKind& kind) {
  spec.validate_for(u0);
  const std::size_t steps = step_count(T, spec.dt);
  const double h = T < 0.0 ? -spec.dt : spec.dt;
  Stepper stepper(u0.n_max(), spec, kind);
  FourierState c = u0;
  for (std::size_t k = 1; k <= steps; ++k) {
    stepper.advance(c, h);
    if (!c.all_finite()) throw NumericFailure(k - 1, "non-finite amplitude");
  }
  return c;
}

FourierState exact_resonant_flow(const FourierState& u0, double t, int sign) {
  const double m0 = mass_of(u0);
  FourierState out = u0;
  for (Complex& c : out.coeffs()) c *= std::polar(1.0, sign * t * (std::norm(c) - 2.0 * m0));
  return out;
}

}  // namespace fournls
