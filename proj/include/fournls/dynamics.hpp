#pragma once

// Mode dynamics of the fourth-order cubic NLS  i u_t + u_xxxx = mu |u|^2 u
// and of its Wick-ordered variant, plus the Galerkin-truncated flow.
//
//   full:  dc_n/dt = i n^4 c_n - i mu sum_{n1-n2+n3=n} c_{n1} conj(c_{n2}) c_{n3}
//   wick:  dc_n/dt = i n^4 c_n + mu i |c_n|^2 c_n + mu N_NR(u)(n)
//
// With a truncation N the nonlinear part is wrapped in P_{<=N} and the data
// must live in |n| <= N.

#include <cstddef>
#include <optional>
#include <vector>

#include "fournls/spectrum.hpp"

namespace fournls {

enum class Equation { Full4NLS, Wick4WNLS };

struct EquationKind {
  Equation equation = Equation::Full4NLS;
  int sign = 1;
  /// Test mode: keep the dispersion, drop the nonlinearity.
  bool linear_only = false;

  double coupling() const noexcept { return linear_only ? 0.0 : static_cast<double>(sign); }
  void validate() const;

  static EquationKind full(int sign = 1) { return {Equation::Full4NLS, sign, false}; }
  static EquationKind wick(int sign = 1) { return {Equation::Wick4WNLS, sign, false}; }
  static EquationKind linear(Equation eq = Equation::Full4NLS) { return {eq, 1, true}; }
};

enum class Scheme { ExpRK4, Strang };

struct IntegratorSpec {
  Scheme scheme = Scheme::ExpRK4;
  double dt = 1e-3;
  std::optional<int> truncation;

  void validate() const;
  /// Also checks truncation <= n_max and that the datum lives inside it.
  void validate_for(const FourierState& u) const;
};

/// d_n = sum_{n1-n2+n3=n} u_{n1} conj(v_{n2}) w_{n3}, all indices within n_max.
/// Alias-free zero-padded transform.
FourierState cubic_convolution(const FourierState& u, const FourierState& v,
                               const FourierState& w);

/// i|c_n|^2 c_n - 2i (sum_k |c_k|^2) c_n
FourierState nonlinearity_resonant(const FourierState& u);
/// -i sum over the non-resonant set, via the splitting identity.
FourierState nonlinearity_nonresonant(const FourierState& u);

FourierState rhs(const FourierState& u, const EquationKind& kind,
                 std::optional<int> truncation = std::nullopt);

/// Reusable workspace for repeated steps at one truncation radius.
class Stepper {
 public:
  Stepper(int n_max, const IntegratorSpec& spec, const EquationKind& kind);

  /// Advances in place by h (negative h runs backward in time).
  void advance(FourierState& c, double h);

  const IntegratorSpec& spec() const noexcept { return spec_; }

 private:
  void nonlinear(const FourierState& c, FourierState& out);
  void rk4(FourierState& c, double h);
  void strang(FourierState& c, double h);
  void linear_phase(FourierState& c, double h) const;

  int n_max_;
  int radius_;
  IntegratorSpec spec_;
  EquationKind kind_;
  std::size_t grid_;
  std::vector<Complex> buf_;
  FourierState k1_, k2_, k3_, k4_, tmp_;
};

/// One step of length spec.dt. NumericFailure carries step_index.
FourierState step(const FourierState& u, const IntegratorSpec& spec, const EquationKind& kind,
                  std::size_t step_index = 0);

/// Samples every sample_stride steps, t = 0 and t = T included. T must be a
/// nonnegative integer multiple of dt (1e-12) and of stride*dt.
Trajectory integrate(const FourierState& u0, double T, const IntegratorSpec& spec,
                     const EquationKind& kind, std::size_t sample_stride = 1);

/// Final state only; T of either sign.
FourierState evolve(const FourierState& u0, double T, const IntegratorSpec& spec,
                    const EquationKind& kind);

/// Number of steps of size dt covering |T|; throws unless |T| = K dt within 1e-12.
std::size_t step_count(double T, double dt);

/// Closed-form flow of dc_n/dt = mu (i|c_n|^2 - 2i M0) c_n.
FourierState exact_resonant_flow(const FourierState& u0, double t, int sign = 1);

}  // namespace fournls
