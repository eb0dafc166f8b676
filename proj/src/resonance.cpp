#include "fournls/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "fournls/error.hpp"

namespace fournls {
namespace {

void guard(int v) {
  if (v > kMaxResonanceFrequency || v < -kMaxResonanceFrequency)
    throw RangeError("resonance frequency " + std::to_string(v) + " exceeds 2^15");
}

WideInt pow4(WideInt x) {
  const WideInt sq = x * x;
  return sq * sq;
}

double abs_sq(const ModifiedPhase& phase, int n) { return phase.correction(n); }

}  // namespace

std::string to_string(WideInt v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // magnitudes here stay far from the int128 minimum
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

WideInt h_value(int n1, int n2, int n3) {
  guard(n1), guard(n2), guard(n3);
  const WideInt n = WideInt(n1) - n2 + n3;
  return pow4(n1) - pow4(n2) + pow4(n3) - pow4(n);
}

WideInt h_factored(int n1, int n2, int n3) {
  guard(n1), guard(n2), guard(n3);
  const WideInt a = n1, b = n2, c = n3;
  const WideInt n = a - b + c;
  const WideInt s = a + c;
  return (a - b) * (b - c) * (a * a + b * b + c * c + n * n + 2 * s * s);
}

std::vector<ResonanceQuadruple> enumerate_nonresonant(int n, int n_max) {
  if (n_max < 0) throw RangeError("n_max must be nonnegative");
  std::vector<ResonanceQuadruple> out;
  for (int n1 = -n_max; n1 <= n_max; ++n1) {
    for (int n2 = -n_max; n2 <= n_max; ++n2) {
      const int n3 = n - n1 + n2;
      if (std::abs(n3) > n_max) continue;
      if (n1 == n2 || n2 == n3) continue;
      out.push_back({n1, n2, n3, n, h_factored(n1, n2, n3)});
    }
  }
  return out;
}

ModifiedPhase::ModifiedPhase(FourierState reference) : reference_(std::move(reference)) {
  table_.reserve(reference_.size());
  for (int n = -reference_.n_max(); n <= reference_.n_max(); ++n) {
    const double d = n;
    table_.push_back(d * d * d * d + std::norm(reference_[n]));
  }
}

double ModifiedPhase::correction(int n) const {
  if (!reference_.contains(n))
    throw RangeError("frequency " + std::to_string(n) + " outside the phase table (|n| <= " +
                     std::to_string(n_max()) + ")");
  return std::norm(reference_[n]);
}

double ModifiedPhase::value(int n) const {
  if (!reference_.contains(n))
    throw RangeError("frequency " + std::to_string(n) + " outside the phase table");
  return table_[static_cast<std::size_t>(n + n_max())];
}

double g_value(int n1, int n2, int n3, const ModifiedPhase& phase) {
  const int n = n1 - n2 + n3;
  const double corr = abs_sq(phase, n1) - abs_sq(phase, n2) + abs_sq(phase, n3) - abs_sq(phase, n);
  return static_cast<double>(h_factored(n1, n2, n3)) + corr;
}

double g_tilde_value(int n11, int n12, int n13, int n2, int n3, const ModifiedPhase& phase) {
  const int n1 = n11 - n12 + n13;
  const int n = n1 - n2 + n3;
  const WideInt integer_part = h_factored(n1, n2, n3) + h_factored(n11, n12, n13);
  const double corr = abs_sq(phase, n11) - abs_sq(phase, n12) + abs_sq(phase, n13) -
                      abs_sq(phase, n2) + abs_sq(phase, n3) - abs_sq(phase, n);
  return static_cast<double>(integer_part) + corr;
}

Complex normal_form_boundary(const FourierState& u, int n) {
  if (!u.contains(n)) throw RangeError("frequency outside the state");
  const Complex cn = std::conj(u[n]);
  if (cn == Complex{}) return {};
  Complex acc{};
  for (const auto& q : enumerate_nonresonant(n, u.n_max())) {
    if (q.h == 0) throw std::logic_error("zero resonance on the non-resonant set");
    const Complex term = u[q.n1] * std::conj(u[q.n2]) * u[q.n3] * cn;
    acc += term / (Complex{0.0, 1.0} * static_cast<double>(q.h));
  }
  return acc;
}

ResonanceScanSummary scan_resonance_box(int box) {
  if (box < 0) throw RangeError("box must be nonnegative");
  guard(box);
  const int width = 2 * box + 1;
  std::vector<ResonanceScanSummary> slices(static_cast<std::size_t>(width));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < width; ++i) {
    const int n1 = i - box;
    ResonanceScanSummary s;
    s.min_lower_bound_ratio = std::numeric_limits<double>::infinity();
    for (int n2 = -box; n2 <= box; ++n2) {
      for (int n3 = -box; n3 <= box; ++n3) {
        ++s.triples;
        const WideInt h = h_value(n1, n2, n3);
        const WideInt f = h_factored(n1, n2, n3);
        if (h != f) ++s.factorization_mismatches;
        const bool trivial = (n1 == n2) || (n2 == n3);
        if ((h == 0) != trivial) ++s.zero_set_mismatches;
        if (trivial) continue;
        ++s.nonresonant;
        const WideInt n = WideInt(n1) - n2 + n3;
        WideInt peak = std::max({WideInt(n1) * n1, WideInt(n2) * n2, WideInt(n3) * n3, n * n});
        const WideInt bound = (WideInt(n1) - n2) * (WideInt(n2) - n3) * peak;
        const WideInt abs_h = h < 0 ? -h : h;
        const WideInt abs_b = bound < 0 ? -bound : bound;
        if (abs_h < abs_b) ++s.lower_bound_violations;
        s.min_lower_bound_ratio =
            std::min(s.min_lower_bound_ratio, static_cast<double>(abs_h) / static_cast<double>(abs_b));
      }
    }
    slices[static_cast<std::size_t>(i)] = s;
  }
  ResonanceScanSummary total;
  total.min_lower_bound_ratio = std::numeric_limits<double>::infinity();
  for (const auto& s : slices) {
    total.triples += s.triples;
    total.factorization_mismatches += s.factorization_mismatches;
    total.zero_set_mismatches += s.zero_set_mismatches;
    total.nonresonant += s.nonresonant;
    total.lower_bound_violations += s.lower_bound_violations;
    total.min_lower_bound_ratio = std::min(total.min_lower_bound_ratio, s.min_lower_bound_ratio);
  }
  return total;
}

void write_resonance_table(std::ostream& os, int box) {
  if (box < 0) throw RangeError("box must be nonnegative");
  os << "n1,n2,n3,n,H,factored_H\n";
  for (int n1 = -box; n1 <= box; ++n1)
    for (int n2 = -box; n2 <= box; ++n2)
      for (int n3 = -box; n3 <= box; ++n3)
        os << n1 << ',' << n2 << ',' << n3 << ',' << (n1 - n2 + n3) << ','
           << to_string(h_value(n1, n2, n3)) << ',' << to_string(h_factored(n1, n2, n3)) << '\n';
}

}  // namespace fournls
