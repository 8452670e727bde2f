// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "binrank/cover.hpp"
#include "binrank/matrix.hpp"
#include "binrank/solver.hpp"

namespace binrank {

enum class InstanceKind { RankLe, Tight, Far, RandomUniform, Perturbed };

/// How a far instance is built and certified.
///  - Tiny:  uniform random matrix, distance computed exhaustively.
///  - Block: uniform blowup of I_k, k = binom_le(d,s)*2^d + 1.
///  - Lift:  uniform blowup of tight_instance(d+1, s).
enum class FarStrategy { Tiny, Block, Lift };

const char* to_string(InstanceKind k) noexcept;
const char* to_string(FarStrategy f) noexcept;
std::optional<InstanceKind> parse_instance_kind(std::string_view name);
std::optional<FarStrategy> parse_far_strategy(std::string_view name);

struct InstanceSpec {
  Index n = 0;
  Index m = 0;
  unsigned d = 1;
  unsigned s = 1;
  InstanceKind kind = InstanceKind::RankLe;
  std::uint64_t seed = 0;
  /// Far instances: the certified distance must exceed this.
  std::optional<double> far_epsilon;
  FarStrategy strategy = FarStrategy::Tiny;
  /// Per-index inclusion probability for rectangles (RankLe, Perturbed) or
  /// the 1-density (RandomUniform).
  double density = 0.5;

  /// Throws ContractError on non-positive dimensions or missing fields.
  void validate() const;
};

struct FarCertificate {
  /// Certified lower bound on the normalized distance to br_s <= d.
  Fraction distance;
  /// True when `distance` is the exact distance, not only a lower bound.
  bool exact = false;
  std::string method;
  nlohmann::json parameters;
};

struct CertifiedInstance {
  BinaryMatrix matrix;
  std::variant<std::monostate, RectangleCover, FarCertificate> certificate;

  nlohmann::json certificate_json() const;
};

/// A matrix with br_s <= d built from d random rectangles. Each index enters
/// a rectangle with probability `density`; a rectangle that would cover some
/// entry more than s times is redrawn. Throws GenerationError when the redraw
/// cap is hit.
CertifiedInstance gen_rank_le(Index n, Index m, unsigned d, unsigned s, std::uint64_t seed, double density = 0.5);

/// Random duplication of rows and columns up to n2 x m2. Every original row
/// and column appears at least once; the order is shuffled.
BinaryMatrix blowup(const BinaryMatrix& mat, Index n2, Index m2, std::uint64_t seed);

/// Each row repeated `row_factor` times consecutively, each column `col_factor` times.
BinaryMatrix uniform_blowup(const BinaryMatrix& mat, Index row_factor, Index col_factor);

/// Entries i.i.d. Bernoulli(density).
BinaryMatrix random_matrix(Index n, Index m, double density, std::uint64_t seed);

/// Exact minimum number of flips turning the blowup of `types` (row class i
/// repeated row_mult[i] times, column class j col_mult[j] times) into a
/// matrix of br_s <= 1. Enumerates row-class subsets of the smaller side, so
/// that side must have at most 24 classes.
std::int64_t single_rectangle_flips(const BinaryMatrix& types, const std::vector<std::uint64_t>& row_mult,
                                    const std::vector<std::uint64_t>& col_mult);

/// Lower bound on the flips turning `types` into a matrix of br_s <= d, valid
/// when `types` has pairwise-distinct rows and pairwise-distinct columns:
/// untouched rows stay distinct, so r - (changed rows) <= u_r and likewise
/// for columns, with u_r, u_c <= 2^d and u_r*u_c <= binom_le(d,s)*2^d.
std::int64_t distinct_count_flip_bound(Index rows, Index cols, unsigned d, unsigned s);

/// Certified distance of the uniform blowup of a perfect type matrix: exact
/// for d == 1, the distinct-count bound otherwise. Normalized by the type
/// matrix size (the blowup has the same normalized distance lower bound).
FarCertificate certify_type_matrix(const BinaryMatrix& types, unsigned d, unsigned s, const std::string& method);

/// log2 of an upper bound on Pr[a uniform random n x m matrix is within
/// distance epsilon of br_s <= d], for epsilon <= 1/2. Counts the 2^(d(n+m))
/// possible factorizations times the Hamming ball volume 2^(nm H(epsilon)).
double uniform_near_probability_log2(Index n, Index m, unsigned d, double epsilon);

/// An n x m instance certified to be more than epsilon-far from br_s <= d.
/// Block and Lift need n and m to be multiples of the type matrix size.
/// Throws GenerationError when no certificate beats epsilon.
CertifiedInstance gen_far(Index n, Index m, unsigned d, unsigned s, double epsilon, std::uint64_t seed,
                          FarStrategy strategy = FarStrategy::Tiny);

/// M with row x replaced. Throws IndexError / ContractError.
BinaryMatrix perturb_row(const BinaryMatrix& mat, Index x, const BitVector& new_row);

/// M with its top-left d x k block overwritten by the first k columns of I_d.
/// Needs k <= d, d <= rows, k <= cols.
BinaryMatrix identity_plant(const BinaryMatrix& mat, unsigned d, unsigned k);

/// Dispatches on spec.kind.
CertifiedInstance generate(const InstanceSpec& spec);

}  // namespace binrank
