// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>

#include "binrank/matrix.hpp"

namespace binrank {

// ".bm" text format: a header line "n m", then n lines of exactly m
// characters from {0,1}. Ragged or malformed input throws ParseError.

BinaryMatrix read_bm(std::istream& in);
void write_bm(std::ostream& out, const BinaryMatrix& m);

BinaryMatrix load_bm(const std::filesystem::path& path);
void save_bm(const std::filesystem::path& path, const BinaryMatrix& m);

}  // namespace binrank
