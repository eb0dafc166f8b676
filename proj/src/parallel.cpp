#include "fournls/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace fournls {

int configure_threads_from_env() {
  if (const char* env = std::getenv("FOURNLS_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) omp_set_num_threads(cap);
    } catch (const std::exception&) {
      // unparsable value: keep the OpenMP default
    }
  }
  return omp_get_max_threads();
}

int worker_count() { return omp_get_max_threads(); }

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> key) noexcept {
  std::uint64_t h = mix64(root);
  std::uint64_t counter = 0;
  for (std::uint64_t k : key) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL * ++counter));
  return h;
}

}  // namespace fournls
