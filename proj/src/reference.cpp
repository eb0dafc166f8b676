#include "fournls/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fournls/error.hpp"

namespace fournls::reference {

FourierState cubic_convolution(const FourierState& u, const FourierState& v,
                               const FourierState& w) {
  if (u.n_max() != v.n_max() || u.n_max() != w.n_max())
    throw ShapeError("cubic_convolution operands differ in n_max");
  const int N = u.n_max();
  FourierState out(N);
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2)
      for (int n3 = -N; n3 <= N; ++n3) {
        const int n = n1 - n2 + n3;
        if (std::abs(n) <= N) out[n] += u[n1] * std::conj(v[n2]) * w[n3];
      }
  return out;
}

Complex nonresonant_sum(const FourierState& u, int n) {
  const int N = u.n_max();
  Complex acc{};
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2)
      for (int n3 = -N; n3 <= N; ++n3)
        if (n1 - n2 + n3 == n && n1 != n2 && n2 != n3) acc += u[n1] * std::conj(u[n2]) * u[n3];
  return acc;
}

FourierState nonlinearity_nonresonant(const FourierState& u) {
  FourierState out(u.n_max());
  for (int n = -u.n_max(); n <= u.n_max(); ++n)
    out[n] = Complex{0.0, -1.0} * nonresonant_sum(u, n);
  return out;
}

double quartic_sum(const FourierState& u) {
  const int N = u.n_max();
  Complex acc{};
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2)
      for (int n3 = -N; n3 <= N; ++n3) {
        const int n4 = n1 - n2 + n3;
        if (std::abs(n4) <= N) acc += u[n1] * std::conj(u[n2]) * u[n3] * std::conj(u[n4]);
      }
  return acc.real();
}

std::vector<ResonanceQuadruple> brute_force_nonresonant(int n, int n_max) {
  std::vector<ResonanceQuadruple> out;
  for (int n1 = -n_max; n1 <= n_max; ++n1)
    for (int n2 = -n_max; n2 <= n_max; ++n2)
      for (int n3 = -n_max; n3 <= n_max; ++n3) {
        if (n1 - n2 + n3 != n) continue;
        if ((n1 - n2) * (n2 - n3) == 0) continue;
        out.push_back({n1, n2, n3, n, h_value(n1, n2, n3)});
      }
  return out;
}

ResonanceScanSummary scan_resonance_box_serial(int box) {
  ResonanceScanSummary s;
  s.min_lower_bound_ratio = std::numeric_limits<double>::infinity();
  for (int n1 = -box; n1 <= box; ++n1)
    for (int n2 = -box; n2 <= box; ++n2)
      for (int n3 = -box; n3 <= box; ++n3) {
        ++s.triples;
        const WideInt h = h_value(n1, n2, n3);
        if (h != h_factored(n1, n2, n3)) ++s.factorization_mismatches;
        const bool trivial = (n1 == n2) || (n2 == n3);
        if ((h == 0) != trivial) ++s.zero_set_mismatches;
        if (trivial) continue;
        ++s.nonresonant;
        const WideInt n = WideInt(n1) - n2 + n3;
        const WideInt peak =
            std::max({WideInt(n1) * n1, WideInt(n2) * n2, WideInt(n3) * n3, n * n});
        WideInt bound = (WideInt(n1) - n2) * (WideInt(n2) - n3) * peak;
        if (bound < 0) bound = -bound;
        const WideInt abs_h = h < 0 ? -h : h;
        if (abs_h < bound) ++s.lower_bound_violations;
        s.min_lower_bound_ratio =
            std::min(s.min_lower_bound_ratio, static_cast<double>(abs_h) / static_cast<double>(bound));
      }
  return s;
}

}  // namespace fournls::reference
