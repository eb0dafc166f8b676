#include <doctest.h>

#include "fournls/dynamics.hpp"
#include "fournls/gauge.hpp"
#include "support.hpp"

using namespace fournls;
using testing::random_state;

TEST_CASE("gauge phase basics") {
  const auto u = random_state(6, 1);
  CHECK(gauge_apply(u, 0.0, 1.0) == u);
  CHECK(gauge_apply(u, 3.0, 0.0) == u);
  CHECK(gauge_invert(u, 0.0, 1.0) == u);
  CHECK(testing::max_abs_diff(gauge_invert(gauge_apply(u, 0.7, 1.3, -1), 0.7, 1.3, -1), u) < 1e-15);
  CHECK(gauge_invert(u, 0.4, 2.0) == gauge_apply(u, -0.4, 2.0));
  const auto g = gauge_apply(u, 0.9, mass(u));
  for (int n = -6; n <= 6; ++n) CHECK(std::abs(std::abs(g[n]) - std::abs(u[n])) < 1e-15);
  CHECK(std::abs(mass(g) - mass(u)) < 1e-15);
  const auto x = synthesize(u, 31), gx = synthesize(g, 31);
  for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(std::abs(gx[j]) - std::abs(x[j])) < 1e-14);
  for (int sign : {1, -1}) {
    const auto s = gauge_apply(u, 0.5, 2.0, sign);
    CHECK(std::abs(s[1] - u[1] * std::exp(Complex(0, 2.0 * sign * 0.5 * 2.0))) < 1e-15);
  }
}

TEST_CASE("gauge maps the full plane wave to the wick plane wave") {
  const Complex A{0.4, 0.8};
  const int n0 = 3;
  const double t = 0.6;
  FourierState u(4);
  u[n0] = A * std::exp(Complex(0, t * (81.0 - std::norm(A))));
  const auto g = gauge_apply(u, t, std::norm(A));
  CHECK(std::abs(g[n0] - A * std::exp(Complex(0, t * (81.0 + std::norm(A))))) < 1e-14);
}

TEST_CASE("gauge equivalence check") {
  IntegratorSpec s;
  FourierState zero(8);
  CHECK(gauge_equivalence_check(zero, 1.0, s, EquationKind::full(), 10).max_gap == 0.0);

  FourierState pw(8);
  pw[2] = {0.9, 0.1};
  for (int sign : {1, -1})
    CHECK(gauge_equivalence_check(pw, 1.0, s, EquationKind::full(sign), 10).max_gap < 1e-8);

  const auto u = random_state(12, 3, 1.0, 1.0);
  const auto rep = gauge_equivalence_check(u, 0.5, s, EquationKind::full(), 50);
  CHECK(rep.times.size() == 11);
  CHECK(rep.gaps.front() == 0.0);
  CHECK(rep.max_gap == *std::max_element(rep.gaps.begin(), rep.gaps.end()));
  s.dt = 5e-4;
  const auto fine = gauge_equivalence_check(u, 0.5, s, EquationKind::full(), 100);
  CHECK(fine.max_gap < rep.max_gap / 8);
}
