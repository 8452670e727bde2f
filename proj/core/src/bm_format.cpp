// SPDX-License-Identifier: Apache-2.0
#include "binrank/bm_format.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "binrank/errors.hpp"

namespace binrank {

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

BinaryMatrix read_bm(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(".bm: missing header");
  strip_cr(line);
  std::istringstream header(line);
  long long n = 0;
  long long m = 0;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra)) throw ParseError(".bm: header must be \"n m\"");
  if (n <= 0 || m <= 0) throw ParseError(".bm: dimensions must be positive");

  BinaryMatrix mat(static_cast<Index>(n), static_cast<Index>(m));
  for (long long i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ParseError(".bm: expected " + std::to_string(n) + " rows");
    strip_cr(line);
    if (static_cast<long long>(line.size()) != m)
      throw ParseError(".bm: row " + std::to_string(i + 1) + " has " + std::to_string(line.size()) +
                       " characters, expected " + std::to_string(m));
    for (long long j = 0; j < m; ++j) {
      const char c = line[static_cast<std::size_t>(j)];
      if (c != '0' && c != '1') throw ParseError(".bm: row " + std::to_string(i + 1) + " has a non-binary character");
      if (c == '1') mat.set(static_cast<Index>(i), static_cast<Index>(j), true);
    }
  }
  while (std::getline(in, line)) {
    strip_cr(line);
    if (!line.empty()) throw ParseError(".bm: trailing data after the last row");
  }
  return mat;
}

void write_bm(std::ostream& out, const BinaryMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n' << m.to_string();
}

BinaryMatrix load_bm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_bm(in);
}

void save_bm(const std::filesystem::path& path, const BinaryMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_bm(out, m);
}

}  // namespace binrank
