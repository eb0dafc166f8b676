#pragma once

// Serial direct-summation kernels. They cost O(N^3) and exist to check the
// transform-based and OpenMP paths; nothing in the production path calls them.

#include "fournls/resonance.hpp"
#include "fournls/spectrum.hpp"

namespace fournls::reference {

/// Triple loop over n1 - n2 + n3 = n.
FourierState cubic_convolution(const FourierState& u, const FourierState& v,
                               const FourierState& w);

/// sum_{N_n} u_{n1} conj(u_{n2}) u_{n3} by brute-force triple scan (no enumerate_nonresonant).
Complex nonresonant_sum(const FourierState& u, int n);

/// -i sum_{N_n} ... for every n.
FourierState nonlinearity_nonresonant(const FourierState& u);

/// sum_{n1-n2+n3-n4=0} c_{n1} conj(c_{n2}) c_{n3} conj(c_{n4}).
double quartic_sum(const FourierState& u);

/// Every triple in |n_i| <= n_max with n1 - n2 + n3 = n and (n1-n2)(n2-n3) != 0,
/// found by scanning the full cube.
std::vector<ResonanceQuadruple> brute_force_nonresonant(int n, int n_max);

/// Single-threaded version of scan_resonance_box.
ResonanceScanSummary scan_resonance_box_serial(int box);

}  // namespace fournls::reference
