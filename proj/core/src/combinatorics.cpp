// SPDX-License-Identifier: Apache-2.0
#include "binrank/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "binrank/errors.hpp"

namespace binrank {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

// Lexicographic key of a d-bit vector where coordinate 1 (bit 0) is the most
// significant position.
std::uint64_t lex_key(std::uint64_t v, unsigned d) {
  std::uint64_t key = 0;
  for (unsigned k = 0; k < d; ++k)
    if ((v >> k) & 1U) key |= std::uint64_t{1} << (d - 1 - k);
  return key;
}

}  // namespace

std::uint64_t binom_le(std::uint64_t d, std::uint64_t s) {
  const std::uint64_t top = std::min(s, d);
  std::uint64_t term = 1;  // C(d,0)
  std::uint64_t sum = 1;
  for (std::uint64_t i = 1; i <= top; ++i) {
    // C(d,i) = C(d,i-1) * (d-i+1) / i; divide first through the gcd to stay small.
    const std::uint64_t num = d - i + 1;
    const std::uint64_t g = std::gcd(term, i);
    term = checked_mul(term / g, num / (i / g));
    sum = checked_add(sum, term);
  }
  return sum;
}

std::uint64_t product_bound(std::uint64_t d, std::uint64_t s) {
  if (d >= 64) throw std::overflow_error("integer overflow");
  return checked_mul(binom_le(d, s), std::uint64_t{1} << d);
}

bool cross_intersections_bounded(const SetFamilyPair& pair) {
  for (auto a : pair.family_a)
    for (auto b : pair.family_b)
      if (static_cast<unsigned>(std::popcount(a & b)) > pair.s) return false;
  return true;
}

bool check_sgall(const SetFamilyPair& pair) {
  if (!cross_intersections_bounded(pair)) return false;
  const auto lhs = checked_mul(pair.family_a.size(), pair.family_b.size());
  return lhs <= product_bound(pair.d, pair.s);
}

std::vector<std::uint64_t> low_weight_vectors(unsigned d, unsigned s) {
  if (d > 20) throw ResourceError("low_weight_vectors: d too large");
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v)
    if (static_cast<unsigned>(std::popcount(v)) <= s) out.push_back(v);
  std::sort(out.begin(), out.end(), [d](std::uint64_t a, std::uint64_t b) {
    const int wa = std::popcount(a);
    const int wb = std::popcount(b);
    if (wa != wb) return wa < wb;
    return lex_key(a, d) < lex_key(b, d);
  });
  return out;
}

BinaryMatrix tight_instance(unsigned d, unsigned s) {
  if (d < 1) throw ContractError("tight_instance: d must be >= 1");
  if (s > d) throw ContractError("tight_instance: s must be <= d");
  if (d > 12 || binom_le(d, s) * (std::uint64_t{1} << d) > (std::uint64_t{1} << 24))
    throw ResourceError("tight_instance: instance exceeds desk-scale limits");

  const auto cols = low_weight_vectors(d, s);
  const std::uint64_t n = std::uint64_t{1} << d;
  std::vector<std::uint64_t> rows(n);
  for (std::uint64_t v = 0; v < n; ++v) rows[v] = v;
  std::sort(rows.begin(), rows.end(),
            [d](std::uint64_t a, std::uint64_t b) { return lex_key(a, d) < lex_key(b, d); });

  BinaryMatrix m(n, cols.size());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < cols.size(); ++j)
      if ((rows[i] & cols[j]) != 0) m.set(i, j, true);
  return m;
}

}  // namespace binrank
