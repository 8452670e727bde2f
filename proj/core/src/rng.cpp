// SPDX-License-Identifier: Apache-2.0
#include "binrank/rng.hpp"

#include "binrank/errors.hpp"

namespace binrank {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stable_hash(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ContractError("Rng::below: bound must be positive");
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % bound;
}

bool Rng::bernoulli(double p) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return u < p;
}

}  // namespace binrank
