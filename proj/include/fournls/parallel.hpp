#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fournls {

/// Caps the OpenMP worker count from FOURNLS_THREADS when set. Returns the cap in effect.
int configure_threads_from_env();
int worker_count();

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based derivation of an independent stream seed from the root seed
/// and an integer task key: seed_k = mix64(root ^ mix64(k_0 + c)) folded over keys.
/// Results do not depend on scheduling, so parallel tasks stay reproducible.
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> key) noexcept;

using Rng = std::mt19937_64;

}  // namespace fournls
