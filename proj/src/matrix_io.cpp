#include "eigensense/matrix_io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "eigensense/errors.hpp"
#include "eigensense/format.hpp"

namespace eigensense {

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') {
            return true;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

// Parses one `re+imj` token. `pos` walks the line in place.
Complex parse_entry(const std::string& line, std::size_t& pos, std::size_t line_no) {
    const char* begin = line.c_str() + pos;
    char* cursor = nullptr;
    const double re = std::strtod(begin, &cursor);
    if (cursor == begin) {
        throw ParseError("expected a complex entry like 1.5-0.25j", line_no);
    }
    if (*cursor != '+' && *cursor != '-') {
        throw ParseError("complex entry is missing its imaginary part", line_no);
    }
    const char* im_begin = cursor;
    const double im = std::strtod(im_begin, &cursor);
    if (cursor == im_begin) {
        throw ParseError("malformed imaginary part", line_no);
    }
    if (*cursor != 'j') {
        throw ParseError("complex entry must end in 'j'", line_no);
    }
    ++cursor;
    pos = static_cast<std::size_t>(cursor - line.c_str());
    return {re, im};
}

ComplexMatrix parse_stream(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    std::size_t rows = 0, cols = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        std::istringstream header(line);
        long long k = 0, n = 0;
        if (!(header >> k >> n) || k < 1 || n < 1) {
            throw ParseError("header must be two positive integers `K N`", line_no);
        }
        std::string trailing;
        if (header >> trailing) {
            throw ParseError("unexpected text after the `K N` header", line_no);
        }
        rows = static_cast<std::size_t>(k);
        cols = static_cast<std::size_t>(n);
        have_header = true;
        break;
    }
    if (!have_header) {
        throw ParseError("missing `K N` header", line_no + 1);
    }

    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    std::size_t parsed_rows = 0;
    while (parsed_rows < rows && std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) {
            continue;
        }
        std::size_t pos = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
                ++pos;
            }
            if (pos >= line.size()) {
                throw ParseError("row has " + std::to_string(j) + " entries, expected " +
                                     std::to_string(cols),
                                 line_no);
            }
            entries.push_back(parse_entry(line, pos, line_no));
        }
        while (pos < line.size()) {
            if (line[pos] == '#') {
                break;
            }
            if (!std::isspace(static_cast<unsigned char>(line[pos]))) {
                throw ParseError("unexpected text after " + std::to_string(cols) + " entries",
                                 line_no);
            }
            ++pos;
        }
        ++parsed_rows;
    }
    if (parsed_rows < rows) {
        throw ParseError("file ends after " + std::to_string(parsed_rows) + " of " +
                             std::to_string(rows) + " rows",
                         line_no + 1);
    }
    return {rows, cols, std::move(entries)};
}

}  // namespace

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    return parse_stream(in);
}

ComplexMatrix parse_matrix_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_stream(in);
}

std::string matrix_to_text(const ComplexMatrix& y, std::string_view comment) {
    std::string out;
    if (!comment.empty()) {
        out += "# ";
        out += comment;
        out += '\n';
    }
    out += std::to_string(y.rows());
    out += ' ';
    out += std::to_string(y.cols());
    out += '\n';
    for (std::size_t i = 0; i < y.rows(); ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) {
            if (j != 0) {
                out += ' ';
            }
            const Complex& e = y(i, j);
            double im = e.imag();
            if (im == 0.0) {
                im = 0.0;  // normalize -0 so the sign splice below stays parseable
            }
            out += fmt_g17(e.real());
            if (!(im < 0.0)) {
                out += '+';
            }
            out += fmt_g17(im);
            out += 'j';
        }
        out += '\n';
    }
    return out;
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& y,
                       std::string_view comment) {
    atomic_write(path, matrix_to_text(y, comment));
}

}  // namespace eigensense
