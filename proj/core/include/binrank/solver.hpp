// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include <boost/rational.hpp>

#include "binrank/cover.hpp"
#include "binrank/matrix.hpp"

namespace binrank {

enum class Decision { Yes, No, Unknown };

const char* to_string(Decision d) noexcept;

struct SolverBudget {
  /// Search-node limit for a single decide call. Exceeding it yields Unknown.
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
};

struct RankDecision {
  Decision status = Decision::Unknown;
  /// Present iff status == Yes; at most d non-empty rectangles.
  std::optional<RectangleCover> witness;
  std::uint64_t nodes = 0;
};

/// Exact decision of br_s(M) <= d.
///
/// Identical rows and columns are merged first. The reduced problem is then
/// solved as a label-assignment search: every distinct row gets a subset A_i
/// of {0..d-1}, every distinct column a subset B_j, subject to
/// |A_i & B_j| in [1,s] on 1-entries and 0 on 0-entries. The search uses
/// forward checking, smallest-domain-first variable order, all-different
/// pruning (distinct rows need distinct subsets) and label-symmetry breaking.
/// Throws ContractError for s == 0 and ResourceError when the reduced problem
/// needs d > 6.
RankDecision decide_rank_le(const BinaryMatrix& m, unsigned d, unsigned s, SolverBudget budget = {});

/// Same search, but returns the factorization of M itself (not of a reduced
/// copy). Label sets always have width d.
struct FactorizationDecision {
  Decision status = Decision::Unknown;
  std::optional<Factorization> factorization;
  std::uint64_t nodes = 0;
};
FactorizationDecision decide_factorization(const BinaryMatrix& m, unsigned d, unsigned s,
                                           SolverBudget budget = {});

struct RankResult {
  Decision status = Decision::Unknown;  // Yes (rank found) or Unknown
  unsigned rank = 0;
  RectangleCover witness;
  std::uint64_t nodes = 0;
};

/// Smallest d with decide_rank_le(M,d,s) == Yes, searched upward from 0.
/// The per-call budget applies to each threshold separately.
RankResult exact_rank(const BinaryMatrix& m, unsigned s, SolverBudget budget = {});

using Fraction = boost::rational<std::int64_t>;

/// Minimum number of flipped entries turning M into a matrix of s-binary rank
/// <= d, divided by n*m.
///
/// Exhaustive, so only tiny instances are supported: for d == 1 every
/// single-rectangle matrix is enumerated (n, m <= 8); for other d every flip
/// set is tried by increasing size (n*m <= 16). Anything larger throws
/// ResourceError.
Fraction distance_to_rank_le(const BinaryMatrix& m, unsigned d, unsigned s);

}  // namespace binrank
