#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "eigensense/complex_matrix.hpp"

namespace eigensense {

/// Sample-file format: optional `#` comment lines, then a header line
/// `K N`, then K rows of N entries. Each entry is `re+imj` / `re-imj`
/// (both parts always present, `j` suffix), separated by spaces.

/// Parses a sample file. Throws ParseError with the offending 1-based line
/// number on malformed input.
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

/// Same, from an in-memory string (used by tests).
ComplexMatrix parse_matrix_text(std::string_view text);

/// Serializes with 17-significant-digit entries; parse(write(Y)) == Y.
std::string matrix_to_text(const ComplexMatrix& y, std::string_view comment = {});

/// Atomic file write of matrix_to_text().
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& y,
                       std::string_view comment = {});

}  // namespace eigensense
