// SPDX-License-Identifier: Apache-2.0
#include "binrank/cover.hpp"

#include <algorithm>
#include <bit>

#include "binrank/errors.hpp"

namespace binrank {

Factorization::Factorization(unsigned d, std::vector<std::uint64_t> row_sets, std::vector<std::uint64_t> col_sets)
    : d_(d), row_sets_(std::move(row_sets)), col_sets_(std::move(col_sets)) {
  if (d > 64) throw ContractError("factorization depth exceeds 64");
  const std::uint64_t mask = d == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1;
  for (auto v : row_sets_)
    if (v & ~mask) throw ContractError("factorization row uses a label >= d");
  for (auto v : col_sets_)
    if (v & ~mask) throw ContractError("factorization column uses a label >= d");
}

unsigned Factorization::product(Index i, Index j) const {
  return static_cast<unsigned>(std::popcount(row_sets_.at(i) & col_sets_.at(j)));
}

BinaryMatrix Factorization::left_matrix() const {
  BinaryMatrix n(rows(), d_);
  for (Index i = 0; i < rows(); ++i)
    for (unsigned k = 0; k < d_; ++k) n.set(i, k, left(i, k));
  return n;
}

BinaryMatrix Factorization::right_matrix() const {
  BinaryMatrix l(d_, cols());
  for (unsigned k = 0; k < d_; ++k)
    for (Index j = 0; j < cols(); ++j) l.set(k, j, right(k, j));
  return l;
}

bool Factorization::realizes(const BinaryMatrix& m, unsigned s) const {
  if (m.rows() != rows() || m.cols() != cols()) return false;
  for (Index i = 0; i < rows(); ++i)
    for (Index j = 0; j < cols(); ++j) {
      const unsigned p = product(i, j);
      if (p > s || (p == 0) == m(i, j)) return false;
    }
  return true;
}

bool verify_cover(const BinaryMatrix& m, const RectangleCover& cover) {
  if (cover.n != m.rows() || cover.m != m.cols()) return false;
  std::vector<unsigned> mult(m.size(), 0);
  for (const auto& r : cover.rectangles) {
    for (Index i : r.rows) {
      if (i >= m.rows()) return false;
      for (Index j : r.cols) {
        if (j >= m.cols() || !m(i, j)) return false;
        ++mult[i * m.cols() + j];
      }
    }
  }
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const unsigned c = mult[i * m.cols() + j];
      if (m(i, j) && (c < 1 || c > cover.s)) return false;
    }
  return true;
}

Factorization cover_to_factorization(const RectangleCover& cover) {
  if (cover.rectangles.size() > 64) throw ContractError("cover has more than 64 rectangles");
  std::vector<std::uint64_t> rows(cover.n, 0);
  std::vector<std::uint64_t> cols(cover.m, 0);
  for (std::size_t k = 0; k < cover.rectangles.size(); ++k) {
    const auto bit = std::uint64_t{1} << k;
    for (Index i : cover.rectangles[k].rows) {
      if (i >= cover.n) throw ContractError("rectangle row out of range");
      rows[i] |= bit;
    }
    for (Index j : cover.rectangles[k].cols) {
      if (j >= cover.m) throw ContractError("rectangle column out of range");
      cols[j] |= bit;
    }
  }
  return {static_cast<unsigned>(cover.rectangles.size()), std::move(rows), std::move(cols)};
}

RectangleCover factorization_to_cover(const Factorization& f, unsigned s) {
  RectangleCover cover;
  cover.s = s;
  cover.n = f.rows();
  cover.m = f.cols();
  for (unsigned k = 0; k < f.depth(); ++k) {
    Rectangle r;
    for (Index i = 0; i < f.rows(); ++i)
      if (f.left(i, k)) r.rows.push_back(i);
    for (Index j = 0; j < f.cols(); ++j)
      if (f.right(k, j)) r.cols.push_back(j);
    cover.rectangles.push_back(std::move(r));
  }
  return cover;
}

nlohmann::json cover_to_json(const RectangleCover& cover) {
  nlohmann::json rects = nlohmann::json::array();
  for (const auto& r : cover.rectangles) {
    std::vector<Index> rows(r.rows);
    std::vector<Index> cols(r.cols);
    for (auto& i : rows) ++i;
    for (auto& j : cols) ++j;
    rects.push_back({{"rows", rows}, {"cols", cols}});
  }
  return {{"s", cover.s}, {"rectangles", rects}};
}

RectangleCover cover_from_json(const nlohmann::json& j, Index n, Index m) {
  try {
    RectangleCover cover;
    cover.s = j.at("s").get<unsigned>();
    cover.n = n;
    cover.m = m;
    for (const auto& r : j.at("rectangles")) {
      Rectangle rect;
      for (auto i : r.at("rows").get<std::vector<Index>>()) {
        if (i == 0) throw ParseError("cover JSON indices are 1-based");
        rect.rows.push_back(i - 1);
      }
      for (auto c : r.at("cols").get<std::vector<Index>>()) {
        if (c == 0) throw ParseError("cover JSON indices are 1-based");
        rect.cols.push_back(c - 1);
      }
      std::sort(rect.rows.begin(), rect.rows.end());
      std::sort(rect.cols.begin(), rect.cols.end());
      cover.rectangles.push_back(std::move(rect));
    }
    return cover;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cover JSON: ") + e.what());
  }
}

}  // namespace binrank
