#pragma once

// Integer resonance algebra on the convolution hyperplane n1 - n2 + n3 = n.
//
//   H(n1,n2,n3) = n1^4 - n2^4 + n3^4 - n^4
//               = (n1-n2)(n2-n3)(n1^2 + n2^2 + n3^2 + n^2 + 2(n1+n3)^2)

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fournls/spectrum.hpp"

namespace fournls {

/// Exact resonance values. |n_i| <= 2^15 keeps every intermediate below 2^127.
__extension__ typedef __int128 WideInt;

inline constexpr int kMaxResonanceFrequency = 1 << 15;

std::string to_string(WideInt v);

struct ResonanceQuadruple {
  int n1 = 0, n2 = 0, n3 = 0, n = 0;
  WideInt h = 0;

  friend bool operator==(const ResonanceQuadruple&, const ResonanceQuadruple&) = default;
};

WideInt h_value(int n1, int n2, int n3);
WideInt h_factored(int n1, int n2, int n3);

/// The non-resonant set at n within the box |n_i| <= n_max, lexicographic in (n1, n2).
std::vector<ResonanceQuadruple> enumerate_nonresonant(int n, int n_max);

/// mu(n) = n^4 + |u0(n)|^2 tied to a reference datum.
class ModifiedPhase {
 public:
  explicit ModifiedPhase(FourierState reference);
  /// Zero reference: the plain dispersion n^4.
  static ModifiedPhase plain(int n_max) { return ModifiedPhase(FourierState(n_max)); }

  const FourierState& reference() const noexcept { return reference_; }
  int n_max() const noexcept { return reference_.n_max(); }

  /// |u0(n)|^2; RangeError outside the reference support.
  double correction(int n) const;
  double value(int n) const;

 private:
  FourierState reference_;
  std::vector<double> table_;
};

/// H plus the phase corrections |u0(n1)|^2 - |u0(n2)|^2 + |u0(n3)|^2 - |u0(n)|^2.
double g_value(int n1, int n2, int n3, const ModifiedPhase& phase);

/// Twice-iterated modified resonance function with n1 = n11 - n12 + n13 and
/// n = n1 - n2 + n3:  H(n1,n2,n3) + H(n11,n12,n13) + six phase corrections.
double g_tilde_value(int n11, int n12, int n13, int n2, int n3, const ModifiedPhase& phase);

/// sum over the non-resonant set at n of u_{n1} conj(u_{n2}) u_{n3} conj(u_n) / (iH).
Complex normal_form_boundary(const FourierState& u, int n);

struct ResonanceScanSummary {
  std::uint64_t triples = 0;
  std::uint64_t factorization_mismatches = 0;
  std::uint64_t zero_set_mismatches = 0;
  std::uint64_t nonresonant = 0;
  std::uint64_t lower_bound_violations = 0;
  /// min over non-resonant triples of |H| / (|n1-n2||n2-n3| max(n1^2,n2^2,n3^2,n^2)).
  double min_lower_bound_ratio = 0.0;

  friend bool operator==(const ResonanceScanSummary&, const ResonanceScanSummary&) = default;
};

/// Exhaustive identity scan over |n_i| <= box, split across OpenMP workers by n1 slice.
ResonanceScanSummary scan_resonance_box(int box);

/// CSV rows n1,n2,n3,n,H,factored_H for every triple in |n_i| <= box.
void write_resonance_table(std::ostream& os, int box);

}  // namespace fournls
