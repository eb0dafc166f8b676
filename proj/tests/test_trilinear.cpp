#include <doctest.h>

#include <map>

#include "fournls/resonance.hpp"
#include "fournls/trilinear.hpp"

using namespace fournls;

namespace {
// Direct evaluation of the output sum with an ordered map over output keys.
double direct_output_norm(const LatticeField& a, const LatticeField& b, const LatticeField& c, int level4) {
  const int L = a.max_modulation;
  std::map<std::pair<int, long long>, Complex> out;
  for (std::size_t i = 0; i < a.frequencies.size(); ++i)
    for (std::size_t j = 0; j < b.frequencies.size(); ++j)
      for (std::size_t k = 0; k < c.frequencies.size(); ++k) {
        const int n1 = a.frequencies[i], n2 = b.frequencies[j], n3 = c.frequencies[k];
        if ((n1 - n2) * (n2 - n3) == 0) continue;
        const int n = n1 - n2 + n3;
        if (!DyadicBlock(level4).contains(n)) continue;
        const long long h = static_cast<long long>(h_value(n1, n2, n3));
        for (int m1 = -L; m1 <= L; ++m1)
          for (int m2 = -L; m2 <= L; ++m2)
            for (int m3 = -L; m3 <= L; ++m3)
              out[{n, h + m1 - m2 + m3}] +=
                  a.amplitudes[i][m1 + L] * std::conj(b.amplitudes[j][m2 + L]) * c.amplitudes[k][m3 + L];
      }
  double acc = 0.0;
  for (const auto& [key, v] : out) acc += std::norm(v) / std::sqrt(1.0 + double(key.second) * double(key.second));
  return std::sqrt(acc);
}
}  // namespace

TEST_CASE("lattice fields") {
  const auto f = random_dyadic_field(4, 1, 7);
  for (int n : f.frequencies) CHECK(DyadicBlock(4).contains(n));
  CHECK(f.amplitudes.size() == f.frequencies.size());
  CHECK(f.amplitudes[0].size() == 3);
  const auto g = random_dyadic_field(4, 1, 7);
  CHECK(g.amplitudes == f.amplitudes);
  const auto s = single_mode_field(3, {2, 0});
  CHECK(s.x_norm(0.5) == doctest::Approx(2.0));
  CHECK(dyadic_level_of(f) == 4);
  CHECK(dyadic_level_of(s) == 2);
}

TEST_CASE("output norm matches direct summation") {
  const auto a = random_dyadic_field(2, 1, 1), b = random_dyadic_field(4, 1, 2), c = random_dyadic_field(2, 1, 3);
  for (int level4 : {1, 4, 8})
    CHECK(nonresonant_output_norm(a, b, c, level4) ==
          doctest::Approx(direct_output_norm(a, b, c, level4)).epsilon(1e-12));
}

TEST_CASE("trilinear ratio") {
  const auto s = single_mode_field(2, {1, 0});
  CHECK(trilinear_ratio_of(s, s, s, 2) == 0.0);
  const auto st = trilinear_ratio(42, 4, 4, 4, 4, 3);
  CHECK(st.trials == 3);
  CHECK(st.ratios.size() == 3);
  CHECK(std::isfinite(st.max));
  CHECK(st.max >= st.mean);
  const auto again = trilinear_ratio(42, 4, 4, 4, 4, 3);
  CHECK(again.ratios == st.ratios);
  CHECK_THROWS(trilinear_ratio(42, 4, 4, 4, 4, 0));
}

TEST_CASE("trilinear ratio stays bounded across scales") {
  const auto base = trilinear_ratio(9, 4, 4, 4, 4, 4);
  for (int level : {8, 16, 32}) {
    const auto st = trilinear_ratio(9, level, level, level, level, 4);
    CHECK(st.max <= 10.0 * base.max);
  }
}
