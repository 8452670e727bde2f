// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace binrank {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stable 64-bit hash of a string (FNV-1a), identical on every platform.
std::uint64_t stable_hash(std::string_view s) noexcept;

/// Seedable, splittable generator with platform-independent output.
///
/// std::mt19937_64 is fully specified by the standard; the bounded draws below
/// avoid the implementation-defined std distributions so a seed reproduces
/// the same run everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  /// Child stream keyed by `key`; independent of the parent's position.
  Rng split(std::uint64_t key) const { return Rng(derive(seed_, key)); }
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t key) noexcept {
    return mix64(seed ^ mix64(key + 0x9e3779b97f4a7c15ULL));
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability p (53-bit resolution).
  bool bernoulli(double p);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace binrank
