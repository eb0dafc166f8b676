#pragma once

// Gauge map between the full and Wick-ordered flows:
//   G[u](t) = e^{2 i mu t M0} u(t),   M0 = sum |c_n(0)|^2.

#include <vector>

#include "fournls/dynamics.hpp"
#include "fournls/spectrum.hpp"

namespace fournls {

FourierState gauge_apply(const FourierState& u, double t, double mass0, int sign = 1);
FourierState gauge_invert(const FourierState& v, double t, double mass0, int sign = 1);

struct GaugeReport {
  double max_gap = 0.0;
  std::vector<double> times;
  std::vector<double> gaps;
};

/// Integrates the full and Wick equations from u0 and measures
/// sup_t ||G[u](t) - v(t)||_{l2}. kind.equation is ignored; its sign is used.
GaugeReport gauge_equivalence_check(const FourierState& u0, double T, const IntegratorSpec& spec,
                                    const EquationKind& kind, std::size_t sample_stride = 1);

}  // namespace fournls
