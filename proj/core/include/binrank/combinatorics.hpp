// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "binrank/matrix.hpp"

namespace binrank {

/// sum_{i=0..min(s,d)} C(d,i), exact. Throws std::overflow_error past 64 bits.
std::uint64_t binom_le(std::uint64_t d, std::uint64_t s);

/// binom_le(d,s) * 2^d: the largest r(M)*c(M) possible at s-binary rank <= d.
std::uint64_t product_bound(std::uint64_t d, std::uint64_t s);

/// Two families of subsets of {0..d-1}, each subset a bitmask. d <= 64.
struct SetFamilyPair {
  unsigned d = 0;
  std::vector<std::uint64_t> family_a;
  std::vector<std::uint64_t> family_b;
  unsigned s = 0;
};

/// Every A in family_a and B in family_b meet in at most s elements.
bool cross_intersections_bounded(const SetFamilyPair& pair);

/// cross_intersections_bounded(pair) && |A|*|B| <= product_bound(d,s).
/// Whenever the first conjunct holds the second one must too.
bool check_sgall(const SetFamilyPair& pair);

/// Columns of weight <= s in {0,1}^d, ordered by weight and then
/// lexicographically with coordinate 1 most significant. Bit k-1 of each mask
/// holds coordinate k.
std::vector<std::uint64_t> low_weight_vectors(unsigned d, unsigned s);

/// The 2^d x binom_le(d,s) extremal matrix: rows enumerate {0,1}^d
/// lexicographically, columns enumerate low_weight_vectors(d,s), and an entry
/// is 1 iff the row vector and column vector share a coordinate.
/// Requires 1 <= d <= 20 and s <= d; larger instances throw ResourceError.
BinaryMatrix tight_instance(unsigned d, unsigned s);

}  // namespace binrank
