#pragma once

#include <filesystem>
#include <string>

namespace eigensense {

/// Double formatted with 9 significant digits, locale-independent decimal
/// point. Used for all CSV and report output.
std::string fmt_g9(double x);

/// Double formatted with 17 significant digits (round-trip exact).
std::string fmt_g17(double x);

/// Writes `content` to a temporary sibling of `path` and atomically renames
/// it into place, so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace eigensense
