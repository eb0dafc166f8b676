#include "fournls/trilinear.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <unordered_map>

#include "fournls/error.hpp"
#include "fournls/parallel.hpp"
#include "fournls/resonance.hpp"

namespace fournls {

double LatticeField::x_norm(double b) const {
  double acc = 0.0;
  for (const auto& row : amplitudes)
    for (int m = -max_modulation; m <= max_modulation; ++m)
      acc += std::pow(1.0 + double(m) * m, b) * std::norm(row[static_cast<std::size_t>(m + max_modulation)]);
  return std::sqrt(acc);
}

LatticeField random_dyadic_field(int level, int max_modulation, std::uint64_t seed) {
  if (max_modulation < 0) throw RangeError("max_modulation must be nonnegative");
  const DyadicBlock block(level);
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  LatticeField f;
  f.max_modulation = max_modulation;
  f.frequencies = block.members();
  for (std::size_t i = 0; i < f.frequencies.size(); ++i) {
    std::vector<Complex> row(static_cast<std::size_t>(2 * max_modulation + 1));
    for (Complex& z : row) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z = Complex{re, im};
    }
    f.amplitudes.push_back(std::move(row));
  }
  return f;
}

LatticeField single_mode_field(int n, Complex amplitude) {
  LatticeField f;
  f.frequencies = {n};
  f.amplitudes = {{amplitude}};
  return f;
}

double nonresonant_output_norm(const LatticeField& u1, const LatticeField& u2,
                               const LatticeField& u3, int level4) {
  const DyadicBlock out_block(level4);
  std::unordered_map<int, std::size_t> index3;
  for (std::size_t i = 0; i < u3.frequencies.size(); ++i) index3.emplace(u3.frequencies[i], i);
  const int L1 = u1.max_modulation, L2 = u2.max_modulation, L3 = u3.max_modulation;
  const std::vector<int> outputs = out_block.members();

  std::vector<double> per_output(outputs.size(), 0.0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t o = 0; o < outputs.size(); ++o) {
    try {
      const int n = outputs[o];
      std::unordered_map<long long, Complex> acc;
      for (std::size_t i1 = 0; i1 < u1.frequencies.size(); ++i1) {
        const int n1 = u1.frequencies[i1];
        for (std::size_t i2 = 0; i2 < u2.frequencies.size(); ++i2) {
          const int n2 = u2.frequencies[i2];
          const int n3 = n - n1 + n2;
          if (n1 == n2 || n2 == n3) continue;
          const auto it = index3.find(n3);
          if (it == index3.end()) continue;
          const long long h = static_cast<long long>(h_factored(n1, n2, n3));
          const auto& a1 = u1.amplitudes[i1];
          const auto& a2 = u2.amplitudes[i2];
          const auto& a3 = u3.amplitudes[it->second];
          for (int m1 = -L1; m1 <= L1; ++m1)
            for (int m2 = -L2; m2 <= L2; ++m2) {
              const Complex p = a1[static_cast<std::size_t>(m1 + L1)] *
                                std::conj(a2[static_cast<std::size_t>(m2 + L2)]);
              for (int m3 = -L3; m3 <= L3; ++m3)
                acc[h + m1 - m2 + m3] += Complex{0.0, -1.0} * p * a3[static_cast<std::size_t>(m3 + L3)];
            }
        }
      }
      double sum = 0.0;
      for (const auto& [m, v] : acc) sum += std::norm(v) / std::sqrt(1.0 + double(m) * double(m));
      per_output[o] = sum;
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  // summed in output order, independent of the schedule
  return std::sqrt(std::accumulate(per_output.begin(), per_output.end(), 0.0));
}

int dyadic_level_of(const LatticeField& f) {
  int widest = 0;
  for (int n : f.frequencies) widest = std::max(widest, std::abs(n));
  for (int level = 1; level <= std::max(1, widest); level *= 2) {
    const DyadicBlock block(level);
    if (std::all_of(f.frequencies.begin(), f.frequencies.end(), [&](int n) { return block.contains(n); }))
      return level;
  }
  int l = 1;
  while (2 * l <= widest) l *= 2;
  return l;
}

double trilinear_ratio_of(const LatticeField& u1, const LatticeField& u2, const LatticeField& u3,
                          int level4) {
  const double rhs = u1.x_norm(0.5) * u2.x_norm(0.5) * u3.x_norm(0.5);
  if (rhs == 0.0) return 0.0;
  int n_max_level = level4;
  for (const LatticeField* f : {&u1, &u2, &u3}) n_max_level = std::max(n_max_level, dyadic_level_of(*f));
  const double lhs = nonresonant_output_norm(u1, u2, u3, level4);
  return lhs / (std::pow(static_cast<double>(n_max_level), kTrilinearExponent) * rhs);
}

TrilinearStats trilinear_ratio(std::uint64_t seed, int level1, int level2, int level3, int level4,
                               std::size_t trials, int max_modulation) {
  if (trials < 1) throw RangeError("trilinear_ratio needs at least one trial");
  for (int level : {level1, level2, level3, level4}) DyadicBlock{level};
  TrilinearStats stats;
  stats.trials = trials;
  const int top = std::max({level1, level2, level3, level4});
  stats.n_max_level = top;
  stats.ratios.resize(trials);
  for (std::size_t k = 0; k < trials; ++k) {
    const auto u1 = random_dyadic_field(level1, max_modulation, derive_seed(seed, {k, 1}));
    const auto u2 = random_dyadic_field(level2, max_modulation, derive_seed(seed, {k, 2}));
    const auto u3 = random_dyadic_field(level3, max_modulation, derive_seed(seed, {k, 3}));
    stats.ratios[k] = trilinear_ratio_of(u1, u2, u3, level4);
  }
  std::vector<double> sorted = stats.ratios;
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  stats.max = sorted.back();
  stats.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(trials);
  stats.median = quantile(0.5);
  stats.q90 = quantile(0.9);
  return stats;
}

}  // namespace fournls
