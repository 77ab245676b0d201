#include "eigensense/format.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include "eigensense/errors.hpp"

namespace eigensense {

namespace {

std::string fmt_sig(double x, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, x);
    std::string out(buffer);
    // Guard against a locale that prints a decimal comma.
    std::replace(out.begin(), out.end(), ',', '.');
    return out;
}

}  // namespace

std::string fmt_g9(double x) { return fmt_sig(x, 9); }

std::string fmt_g17(double x) { return fmt_sig(x, 17); }

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error("short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace eigensense
