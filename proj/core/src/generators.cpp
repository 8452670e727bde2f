// SPDX-License-Identifier: Apache-2.0
#include "binrank/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "binrank/combinatorics.hpp"
#include "binrank/errors.hpp"
#include "binrank/rng.hpp"

namespace binrank {

const char* to_string(InstanceKind k) noexcept {
  switch (k) {
    case InstanceKind::RankLe:
      return "rankle";
    case InstanceKind::Tight:
      return "tight";
    case InstanceKind::Far:
      return "far";
    case InstanceKind::RandomUniform:
      return "random";
    case InstanceKind::Perturbed:
      return "perturbed";
  }
  return "?";
}

const char* to_string(FarStrategy f) noexcept {
  switch (f) {
    case FarStrategy::Tiny:
      return "tiny";
    case FarStrategy::Block:
      return "block";
    case FarStrategy::Lift:
      return "lift";
  }
  return "?";
}

std::optional<InstanceKind> parse_instance_kind(std::string_view name) {
  for (auto k : {InstanceKind::RankLe, InstanceKind::Tight, InstanceKind::Far, InstanceKind::RandomUniform,
                 InstanceKind::Perturbed})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

std::optional<FarStrategy> parse_far_strategy(std::string_view name) {
  for (auto f : {FarStrategy::Tiny, FarStrategy::Block, FarStrategy::Lift})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

void InstanceSpec::validate() const {
  if (kind != InstanceKind::Tight && (n == 0 || m == 0)) throw ContractError("instance dimensions must be positive");
  if (s == 0) throw ContractError("instance s must be >= 1");
  if (!(density >= 0.0 && density <= 1.0)) throw ContractError("density must lie in [0,1]");
  if (kind == InstanceKind::Far) {
    if (!far_epsilon) throw ContractError("far instances need far_epsilon");
    if (!(*far_epsilon > 0.0 && *far_epsilon < 1.0)) throw ContractError("far_epsilon must lie in (0,1)");
  }
}

nlohmann::json CertifiedInstance::certificate_json() const {
  if (const auto* cover = std::get_if<RectangleCover>(&certificate)) {
    nlohmann::json j = cover_to_json(*cover);
    j["type"] = "cover";
    return j;
  }
  if (const auto* far = std::get_if<FarCertificate>(&certificate)) {
    return {{"type", "far"},
            {"distance", std::to_string(far->distance.numerator()) + "/" + std::to_string(far->distance.denominator())},
            {"distance_value", boost::rational_cast<double>(far->distance)},
            {"exact", far->exact},
            {"method", far->method},
            {"parameters", far->parameters}};
  }
  return {{"type", "none"}};
}

namespace {

void shuffle(std::vector<Index>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

// Source row (column) of every output row (column).
struct BlowupMaps {
  std::vector<Index> rows;
  std::vector<Index> cols;
};

BlowupMaps random_maps(Index n, Index m, Index n2, Index m2, std::uint64_t seed) {
  if (n2 < n || m2 < m) throw ContractError("blowup: target must not be smaller than the source");
  Rng rng(seed);
  BlowupMaps maps;
  auto fill = [&](std::vector<Index>& v, Index k, Index k2) {
    v.resize(k2);
    std::iota(v.begin(), v.begin() + static_cast<long>(k), Index{0});
    for (Index i = k; i < k2; ++i) v[i] = rng.below(k);
    shuffle(v, rng);
  };
  fill(maps.rows, n, n2);
  fill(maps.cols, m, m2);
  return maps;
}

BinaryMatrix apply_maps(const BinaryMatrix& mat, const BlowupMaps& maps) { return mat.submatrix(maps.rows, maps.cols); }

Factorization apply_maps(const Factorization& f, const BlowupMaps& maps) {
  std::vector<std::uint64_t> rows(maps.rows.size());
  std::vector<std::uint64_t> cols(maps.cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = f.row_sets()[maps.rows[i]];
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = f.col_sets()[maps.cols[j]];
  return {f.depth(), std::move(rows), std::move(cols)};
}

std::vector<Index> permutation(Index k, Rng& rng) {
  std::vector<Index> p(k);
  std::iota(p.begin(), p.end(), Index{0});
  shuffle(p, rng);
  return p;
}

Fraction make_fraction(std::int64_t num, std::uint64_t den) {
  if (den > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw ResourceError("distance denominator overflow");
  return {num, static_cast<std::int64_t>(den)};
}

std::string fraction_string(const Fraction& f) {
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

}  // namespace

CertifiedInstance gen_rank_le(Index n, Index m, unsigned d, unsigned s, std::uint64_t seed, double density) {
  if (n == 0 || m == 0) throw ContractError("gen_rank_le: dimensions must be positive");
  if (s == 0) throw ContractError("gen_rank_le: s must be >= 1");
  if (!(density >= 0.0 && density <= 1.0)) throw ContractError("gen_rank_le: density must lie in [0,1]");
  constexpr unsigned kMaxRedraws = 20000;

  Rng rng(seed);
  std::vector<std::uint8_t> multiplicity(n * m, 0);
  RectangleCover cover;
  cover.s = s;
  cover.n = n;
  cover.m = m;
  for (unsigned k = 0; k < d; ++k) {
    for (unsigned attempt = 0;; ++attempt) {
      if (attempt == kMaxRedraws)
        throw GenerationError("gen_rank_le: rectangle " + std::to_string(k + 1) +
                              " kept exceeding multiplicity s; use a smaller density or a larger s");
      Rectangle rect;
      for (Index i = 0; i < n; ++i)
        if (rng.bernoulli(density)) rect.rows.push_back(i);
      for (Index j = 0; j < m; ++j)
        if (rng.bernoulli(density)) rect.cols.push_back(j);
      bool ok = true;
      for (Index i : rect.rows) {
        for (Index j : rect.cols)
          if (multiplicity[i * m + j] >= s) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (!ok) continue;
      for (Index i : rect.rows)
        for (Index j : rect.cols) ++multiplicity[i * m + j];
      if (!rect.empty()) cover.rectangles.push_back(std::move(rect));
      break;
    }
  }
  BinaryMatrix mat(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j)
      if (multiplicity[i * m + j] != 0) mat.set(i, j, true);
  return {std::move(mat), std::move(cover)};
}

BinaryMatrix blowup(const BinaryMatrix& mat, Index n2, Index m2, std::uint64_t seed) {
  return apply_maps(mat, random_maps(mat.rows(), mat.cols(), n2, m2, seed));
}

BinaryMatrix uniform_blowup(const BinaryMatrix& mat, Index row_factor, Index col_factor) {
  if (row_factor == 0 || col_factor == 0) throw ContractError("uniform_blowup: factors must be positive");
  std::vector<Index> rows(mat.rows() * row_factor);
  std::vector<Index> cols(mat.cols() * col_factor);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i / row_factor;
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j / col_factor;
  return mat.submatrix(rows, cols);
}

BinaryMatrix random_matrix(Index n, Index m, double density, std::uint64_t seed) {
  Rng rng(seed);
  BinaryMatrix mat(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j)
      if (rng.bernoulli(density)) mat.set(i, j, true);
  return mat;
}

std::int64_t single_rectangle_flips(const BinaryMatrix& types, const std::vector<std::uint64_t>& row_mult,
                                    const std::vector<std::uint64_t>& col_mult) {
  if (row_mult.size() != types.rows() || col_mult.size() != types.cols())
    throw ContractError("single_rectangle_flips: multiplicity length mismatch");
  if (types.rows() > types.cols()) return single_rectangle_flips(types.transpose(), col_mult, row_mult);
  const Index r = types.rows();
  const Index c = types.cols();
  if (r > 24) throw ResourceError("single_rectangle_flips: more than 24 classes on the smaller side");

  // Flipping M to the rectangle I x J costs ones + sum_{I x J} (1 - 2M).
  // For a fixed column set the cost is additive over rows, so some optimum
  // takes each row class entirely or not at all; for a fixed row set every
  // column with a negative contribution is taken.
  std::int64_t ones = 0;
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j)
      if (types(i, j)) ones += static_cast<std::int64_t>(row_mult[i] * col_mult[j]);

  std::int64_t best = ones;
  std::vector<std::int64_t> col_weight(c, 0);
  // Gray-code walk over row-class subsets.
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << r); ++step) {
    const auto i = static_cast<Index>(std::countr_zero(step));
    const std::uint64_t gray = step ^ (step >> 1);
    const std::int64_t sign = ((gray >> i) & 1U) ? 1 : -1;
    const auto p = static_cast<std::int64_t>(row_mult[i]);
    std::int64_t cost = ones;
    for (Index j = 0; j < c; ++j) {
      col_weight[j] += sign * p * (types(i, j) ? -1 : 1);
      if (col_weight[j] < 0) cost += static_cast<std::int64_t>(col_mult[j]) * col_weight[j];
    }
    best = std::min(best, cost);
  }
  return best;
}

std::int64_t distinct_count_flip_bound(Index rows, Index cols, unsigned d, unsigned s) {
  if (d >= 62) throw ResourceError("distinct_count_flip_bound: d too large");
  const std::uint64_t bound = product_bound(d, s);
  const std::uint64_t cap = std::uint64_t{1} << d;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t ur = 1; ur <= std::min<std::uint64_t>(rows, cap); ++ur) {
    const std::uint64_t uc = std::min<std::uint64_t>({cols, cap, bound / ur});
    if (uc == 0) continue;
    const auto need = static_cast<std::int64_t>(std::max(rows - ur, cols - uc));
    best = std::min(best, need);
  }
  return best == std::numeric_limits<std::int64_t>::max() ? 0 : best;
}

FarCertificate certify_type_matrix(const BinaryMatrix& types, unsigned d, unsigned s, const std::string& method) {
  FarCertificate cert;
  cert.method = method;
  const std::uint64_t cells = types.size();
  if (d == 1) {
    const std::vector<std::uint64_t> ones_r(types.rows(), 1);
    const std::vector<std::uint64_t> ones_c(types.cols(), 1);
    const auto flips = single_rectangle_flips(types, ones_r, ones_c);
    cert.distance = make_fraction(flips, cells);
    cert.exact = true;
    cert.parameters = {{"routine", "single-rectangle class enumeration"}, {"type_flips", flips}};
  } else {
    if (types.distinct_rows() != types.rows() || types.distinct_cols() != types.cols())
      throw ContractError("certify_type_matrix: type matrix must have distinct rows and columns");
    const auto flips = distinct_count_flip_bound(types.rows(), types.cols(), d, s);
    cert.distance = make_fraction(flips, cells);
    cert.exact = false;
    cert.parameters = {{"routine", "distinct-count bound"},
                       {"type_flips_lower_bound", flips},
                       {"product_bound", product_bound(d, s)},
                       {"max_distinct", std::uint64_t{1} << d}};
  }
  cert.parameters["type_rows"] = types.rows();
  cert.parameters["type_cols"] = types.cols();
  cert.parameters["d"] = d;
  cert.parameters["s"] = s;
  return cert;
}

double uniform_near_probability_log2(Index n, Index m, unsigned d, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ContractError("uniform_near_probability_log2: epsilon must lie in (0,1/2]");
  const double cells = static_cast<double>(n) * static_cast<double>(m);
  const double entropy = -epsilon * std::log2(epsilon) - (1.0 - epsilon) * std::log2(1.0 - epsilon);
  return static_cast<double>(d) * static_cast<double>(n + m) + cells * entropy - cells;
}

CertifiedInstance gen_far(Index n, Index m, unsigned d, unsigned s, double epsilon, std::uint64_t seed,
                          FarStrategy strategy) {
  if (n == 0 || m == 0) throw ContractError("gen_far: dimensions must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ContractError("gen_far: epsilon must lie in (0,1)");
  if (d < 1 || s < 1) throw ContractError("gen_far: d and s must be >= 1");
  Rng rng(seed);

  if (strategy == FarStrategy::Tiny) {
    const bool small = d == 1 ? (n <= 8 && m <= 8) : n * m <= 16;
    if (!small) throw GenerationError("gen_far: tiny strategy needs n,m <= 8 (d = 1) or n*m <= 16");
    constexpr int kAttempts = 500;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      BinaryMatrix mat = random_matrix(n, m, 0.5, rng.next());
      const Fraction dist = distance_to_rank_le(mat, d, s);
      if (boost::rational_cast<double>(dist) > epsilon) {
        FarCertificate cert{dist, true, "exhaustive distance", {{"attempts", attempt + 1}, {"d", d}, {"s", s}}};
        return {std::move(mat), std::move(cert)};
      }
    }
    throw GenerationError("gen_far: no random " + std::to_string(n) + "x" + std::to_string(m) +
                          " matrix beat epsilon; lower epsilon or enlarge the matrix");
  }

  const bool block = strategy == FarStrategy::Block;
  if (block && product_bound(d, s) >= 4096) throw ResourceError("gen_far: block instance too large");
  if (!block && s > d + 1) throw GenerationError("gen_far: lift strategy needs s <= d + 1");
  const BinaryMatrix types = block ? BinaryMatrix::identity(product_bound(d, s) + 1) : tight_instance(d + 1, s);
  const std::string method = block ? "identity blowup" : "tight-instance lift";
  const Index kr = types.rows();
  const Index kc = types.cols();
  if (n % kr != 0 || m % kc != 0)
    throw GenerationError("gen_far: " + std::string(to_string(strategy)) + " needs n divisible by " +
                          std::to_string(kr) + " and m divisible by " + std::to_string(kc));

  FarCertificate cert = certify_type_matrix(types, d, s, method);
  if (d == 1) {
    // Exact on the actual blowup, using the multiplicities directly.
    const auto flips = single_rectangle_flips(types, std::vector<std::uint64_t>(kr, n / kr),
                                              std::vector<std::uint64_t>(kc, m / kc));
    cert.distance = make_fraction(flips, n * m);
  }
  cert.parameters["row_factor"] = n / kr;
  cert.parameters["col_factor"] = m / kc;
  if (boost::rational_cast<double>(cert.distance) <= epsilon)
    throw GenerationError("gen_far: certified distance " + fraction_string(cert.distance) +
                          " does not exceed epsilon = " + std::to_string(epsilon));

  // Permuting rows and columns does not change any distance.
  BinaryMatrix mat = uniform_blowup(types, n / kr, m / kc);
  mat = mat.submatrix(permutation(n, rng), permutation(m, rng));
  return {std::move(mat), std::move(cert)};
}

BinaryMatrix perturb_row(const BinaryMatrix& mat, Index x, const BitVector& new_row) {
  if (x >= mat.rows()) throw IndexError("perturb_row: row index out of range");
  if (new_row.size() != mat.cols()) throw ContractError("perturb_row: row length mismatch");
  BinaryMatrix out = mat;
  for (Index j = 0; j < mat.cols(); ++j) out.set(x, j, new_row[j] != 0);
  return out;
}

BinaryMatrix identity_plant(const BinaryMatrix& mat, unsigned d, unsigned k) {
  if (k > d) throw ContractError("identity_plant: k must be <= d");
  if (d > mat.rows() || k > mat.cols()) throw IndexError("identity_plant: block exceeds the matrix");
  BinaryMatrix out = mat;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < k; ++j) out.set(i, j, i == j);
  return out;
}

CertifiedInstance generate(const InstanceSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case InstanceKind::RankLe:
      return gen_rank_le(spec.n, spec.m, spec.d, spec.s, spec.seed, spec.density);
    case InstanceKind::Tight: {
      // For s > d every column weight is allowed, which is the s = d matrix.
      const unsigned s_eff = std::min(spec.s, spec.d);
      const BinaryMatrix base = tight_instance(spec.d, s_eff);
      const auto weights = low_weight_vectors(spec.d, s_eff);
      // Row labels read back from the weight-one columns.
      std::vector<std::uint64_t> rows(base.rows(), 0);
      for (Index j = 0; j < weights.size(); ++j)
        if (std::popcount(weights[j]) == 1)
          for (Index i = 0; i < base.rows(); ++i)
            if (base(i, j)) rows[i] |= weights[j];
      Factorization f(spec.d, std::move(rows), weights);
      const Index n = spec.n == 0 ? base.rows() : spec.n;
      const Index m = spec.m == 0 ? base.cols() : spec.m;
      const auto maps = random_maps(base.rows(), base.cols(), n, m, spec.seed);
      BinaryMatrix mat = apply_maps(base, maps);
      RectangleCover cover = factorization_to_cover(apply_maps(f, maps), spec.s);
      std::erase_if(cover.rectangles, [](const Rectangle& r) { return r.empty(); });
      return {std::move(mat), std::move(cover)};
    }
    case InstanceKind::Far:
      return gen_far(spec.n, spec.m, spec.d, spec.s, *spec.far_epsilon, spec.seed, spec.strategy);
    case InstanceKind::RandomUniform:
      return {random_matrix(spec.n, spec.m, spec.density, spec.seed), std::monostate{}};
    case InstanceKind::Perturbed: {
      Rng rng(spec.seed);
      auto base = gen_rank_le(spec.n, spec.m, spec.d, spec.s, rng.next(), spec.density);
      BitVector row(spec.m);
      for (auto& b : row) b = rng.bernoulli(0.5) ? 1 : 0;
      return {perturb_row(base.matrix, rng.below(spec.n), row), std::monostate{}};
    }
  }
  throw ContractError("generate: unknown kind");
}

}  // namespace binrank
