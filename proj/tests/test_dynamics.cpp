#include <doctest.h>

#include "fournls/dynamics.hpp"
#include "fournls/error.hpp"
#include "fournls/reference.hpp"
#include "support.hpp"

using namespace fournls;
using testing::max_abs_diff;
using testing::random_state;

namespace {
const Complex I{0, 1};

FourierState two_modes() {
  FourierState u(2);
  u[0] = 1;
  u[1] = 1;
  return u;
}

FourierState plane_wave(int n_max, int n0, Complex A) {
  FourierState u(n_max);
  u[n0] = A;
  return u;
}
}  // namespace

TEST_CASE("cubic convolution examples") {
  FourierState z(1);
  z[0] = 2;
  CHECK(std::abs(cubic_convolution(z, z, z)[0] - 8.0) < 1e-14);

  const auto u = two_modes();
  const auto d = cubic_convolution(u, u, u);
  CHECK(std::abs(d[2] - 1.0) < 1e-14);
  CHECK(max_abs_diff(d, reference::cubic_convolution(u, u, u)) < 1e-13);
  CHECK_THROWS_AS(cubic_convolution(u, FourierState(3), u), ShapeError);
}

TEST_CASE("cubic convolution against the triple loop") {
  for (int n_max : {1, 5, 16}) {
    const auto u = random_state(n_max, 1), v = random_state(n_max, 2), w = random_state(n_max, 3);
    CHECK(max_abs_diff(cubic_convolution(u, v, w), reference::cubic_convolution(u, v, w)) < 1e-13);
  }
}

TEST_CASE("resonant nonlinearity") {
  FourierState one(1);
  one[0] = 1;
  CHECK(std::abs(nonlinearity_resonant(one)[0] - (-I)) < 1e-15);
  CHECK(std::abs(nonlinearity_resonant(two_modes())[0] - (-3.0 * I)) < 1e-15);
  CHECK(nonlinearity_resonant(FourierState(3)) == FourierState(3));
}

TEST_CASE("non-resonant nonlinearity") {
  const auto nr = nonlinearity_nonresonant(two_modes());
  CHECK(std::abs(nr[2] - (-I)) < 1e-14);
  CHECK(std::abs(nr[0]) < 1e-14);
  CHECK(max_abs_diff(nonlinearity_nonresonant(plane_wave(4, 3, {0.3, 0.4})), FourierState(4)) < 1e-15);
  const auto u = random_state(8, 17);
  CHECK(max_abs_diff(nonlinearity_nonresonant(u), reference::nonlinearity_nonresonant(u)) < 1e-13);
}

TEST_CASE("splitting identity") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto u = random_state(24, 100 + seed);
    const auto conv = cubic_convolution(u, u, u);
    const auto oracle = reference::nonlinearity_nonresonant(u);
    const auto res = nonlinearity_resonant(u);
    for (int n = -24; n <= 24; ++n) CHECK(std::abs(-I * conv[n] - (res[n] + oracle[n])) < 1e-13);
  }
}

TEST_CASE("rhs single mode") {
  const Complex A{0.6, -0.2};
  for (int sign : {1, -1}) {
    const auto u = plane_wave(3, 2, A);
    const auto f = rhs(u, EquationKind::full(sign));
    const auto w = rhs(u, EquationKind::wick(sign));
    CHECK(std::abs(f[2] - I * (16.0 - sign * std::norm(A)) * A) < 1e-13);
    CHECK(std::abs(w[2] - I * (16.0 + sign * std::norm(A)) * A) < 1e-13);
  }
  CHECK(rhs(FourierState(3), EquationKind::full()) == FourierState(3));
}

TEST_CASE("rhs equations written out mode by mode") {
  const auto u = random_state(6, 5);
  const auto conv = reference::cubic_convolution(u, u, u);
  const auto nr = reference::nonlinearity_nonresonant(u);
  for (int sign : {1, -1}) {
    const auto f = rhs(u, EquationKind::full(sign));
    const auto w = rhs(u, EquationKind::wick(sign));
    for (int n = -6; n <= 6; ++n) {
      const double n4 = std::pow(n, 4);
      CHECK(std::abs(f[n] - (I * n4 * u[n] - I * double(sign) * conv[n])) < 1e-12);
      CHECK(std::abs(w[n] - (I * n4 * u[n] + double(sign) * (I * std::norm(u[n]) * u[n] + nr[n]))) < 1e-12);
    }
  }
}

TEST_CASE("truncated rhs") {
  auto u = random_state(10, 9, 1.0, 0.0, 6);
  const auto full = rhs(u, EquationKind::full());
  const auto cut = rhs(u, EquationKind::full(), 6);
  for (int n = -10; n <= 10; ++n) {
    if (std::abs(n) <= 6)
      CHECK(std::abs(cut[n] - full[n]) < 1e-13);
    else
      CHECK(cut[n] == Complex{});
  }
  u[8] = 0.1;
  CHECK_THROWS_AS(rhs(u, EquationKind::full(), 6), PreconditionError);
}

TEST_CASE("integrator spec validation") {
  IntegratorSpec s;
  s.dt = 0;
  CHECK_THROWS(s.validate());
  s.dt = -1e-3;
  CHECK_THROWS(s.validate());
  s.dt = 1e-3;
  s.truncation = 9;
  CHECK_THROWS(s.validate_for(FourierState(8)));
  CHECK_THROWS(EquationKind{Equation::Full4NLS, 2, false}.validate());
}

TEST_CASE("one step is consistent with rhs") {
  const auto u = random_state(4, 3, 0.5);
  const auto f = rhs(u, EquationKind::full());
  double prev = 0.0;
  for (double h : {1e-4, 5e-5}) {
    IntegratorSpec s;
    s.dt = h;
    auto euler = u;
    for (int n = -4; n <= 4; ++n) euler[n] += h * f[n];
    const double err = max_abs_diff(step(u, s, EquationKind::full()), euler);
    if (prev > 0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("plane wave exactness") {
  const Complex A{0.7, 0.3};
  IntegratorSpec s;
  for (auto scheme : {Scheme::ExpRK4, Scheme::Strang}) {
    s.scheme = scheme;
    for (int sign : {1, -1}) {
      const auto u0 = plane_wave(4, 2, A);
      const auto f = evolve(u0, 1.0, s, EquationKind::full(sign));
      const auto w = evolve(u0, 1.0, s, EquationKind::wick(sign));
      CHECK(std::abs(f[2] - A * std::exp(I * (16.0 - sign * std::norm(A)))) < 1e-8);
      CHECK(std::abs(w[2] - A * std::exp(I * (16.0 + sign * std::norm(A)))) < 1e-8);
    }
  }
  FourierState c2(3);
  c2[2] = 1;
  s.scheme = Scheme::ExpRK4;
  CHECK(std::abs(evolve(c2, 1.0, s, EquationKind::full())[2] - std::exp(I * 15.0)) < 1e-8);
}

TEST_CASE("linear-only runs keep every modulus") {
  const auto u = random_state(12, 8);
  IntegratorSpec s;
  for (auto scheme : {Scheme::ExpRK4, Scheme::Strang}) {
    s.scheme = scheme;
    const auto v = evolve(u, 0.5, s, EquationKind::linear());
    for (int n = -12; n <= 12; ++n) {
      CHECK(std::abs(std::abs(v[n]) - std::abs(u[n])) < 1e-13);
      CHECK(std::abs(v[n] - u[n] * std::exp(I * std::pow(n, 4) * 0.5)) < 1e-9);
    }
  }
}

TEST_CASE("integrate sampling") {
  const auto u = random_state(5, 2, 1.0, 1.0);
  IntegratorSpec s;
  s.dt = 1e-2;
  const auto zero = integrate(u, 0.0, s, EquationKind::full());
  REQUIRE(zero.size() == 1);
  CHECK(zero.states[0] == u);
  const auto t = integrate(u, 0.2, s, EquationKind::full(), 5);
  CHECK(t.size() == 5);
  CHECK(t.dt == doctest::Approx(0.05));
  CHECK(t.states.back() == evolve(u, 0.2, s, EquationKind::full()));
  CHECK_THROWS(integrate(u, 0.2, s, EquationKind::full(), 3));
  CHECK_THROWS(integrate(u, 0.205, s, EquationKind::full()));
  CHECK_THROWS(integrate(u, -0.2, s, EquationKind::full()));
  CHECK(step_count(1.0, 1e-3) == 1000);
}

TEST_CASE("time reversal") {
  const auto u = random_state(16, 4, 1.0, 1.0);
  IntegratorSpec s;
  const auto there = evolve(u, 0.5, s, EquationKind::full());
  const auto back = evolve(there, -0.5, s, EquationKind::full());
  CHECK(testing::l2_diff(back, u) < 1e-6);
}

TEST_CASE("truncated flow keeps high modes at zero") {
  const auto u = random_state(24, 6, 1.0, 0.3, 16);
  IntegratorSpec s;
  s.truncation = 16;
  for (auto scheme : {Scheme::ExpRK4, Scheme::Strang}) {
    s.scheme = scheme;
    const auto t = integrate(u, 0.05, s, EquationKind::full(), 10);
    for (const auto& v : t.states)
      for (int n = 17; n <= 24; ++n) {
        CHECK(v[n] == Complex{});
        CHECK(v[-n] == Complex{});
      }
  }
}

TEST_CASE("strang conserves mass to machine precision") {
  const auto u = random_state(16, 12);
  IntegratorSpec s;
  s.scheme = Scheme::Strang;
  const auto v = evolve(u, 1.0, s, EquationKind::full());
  CHECK(std::abs(mass(v) - mass(u)) / mass(u) < 1e-12);
  const auto w = evolve(u, 1.0, s, EquationKind::wick());
  CHECK(std::abs(mass(w) - mass(u)) / mass(u) < 1e-12);
}

TEST_CASE("rk4 mass drift is fourth order") {
  const auto u = random_state(16, 7, 1.0, 1.0);
  IntegratorSpec s;
  s.truncation = 16;
  double prev = 0.0;
  for (double dt : {1e-3, 5e-4}) {
    s.dt = dt;
    const double drift = std::abs(mass(evolve(u, 1.0, s, EquationKind::full())) - 1.0);
    if (prev > 0) {
      CHECK(prev / drift > 8.0);
      CHECK(prev / drift < 32.0);
    }
    prev = drift;
  }
}

TEST_CASE("non-finite amplitudes fail fast with the step index") {
  FourierState u(2);
  u[1] = 1e200;
  IntegratorSpec s;
  try {
    integrate(u, 0.01, s, EquationKind::full());
    FAIL("expected a numeric failure");
  } catch (const NumericFailure& e) {
    CHECK(e.step_index() == 0);
  }
}

TEST_CASE("exact resonant flow") {
  const auto u = random_state(5, 11);
  CHECK(exact_resonant_flow(u, 0.0) == u);

  FourierState c(1);
  c[0] = 1;
  c[1] = 1;
  const auto v = exact_resonant_flow(c, std::numbers::pi);
  CHECK(std::abs(v[0] + 1.0) < 1e-14);
  CHECK(std::abs(v[1] + 1.0) < 1e-14);

  const auto w = exact_resonant_flow(u, 0.8, -1);
  for (int n = -5; n <= 5; ++n) CHECK(std::abs(std::abs(w[n]) - std::abs(u[n])) < 1e-15);

  // classical RK4 on the diagonal system
  const double M0 = mass(u);
  auto f = [&](const FourierState& c) {
    FourierState out(c.n_max());
    double M = 0.0;
    for (auto z : c.coeffs()) M += std::norm(z);
    for (int n = -c.n_max(); n <= c.n_max(); ++n) out[n] = I * (std::norm(c[n]) - 2.0 * M) * c[n];
    return out;
  };
  auto axpy = [](const FourierState& a, double h, const FourierState& b) {
    FourierState r = a;
    for (int n = -a.n_max(); n <= a.n_max(); ++n) r[n] += h * b[n];
    return r;
  };
  const double h = 1e-3;
  FourierState y = u;
  for (int k = 0; k < 1000; ++k) {
    const auto k1 = f(y), k2 = f(axpy(y, h / 2, k1)), k3 = f(axpy(y, h / 2, k2)), k4 = f(axpy(y, h, k3));
    for (int n = -5; n <= 5; ++n) y[n] += h / 6 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
  }
  CHECK(max_abs_diff(y, exact_resonant_flow(u, 1.0)) < 1e-10);
  CHECK(std::abs(mass(y) - M0) < 1e-10);
}
