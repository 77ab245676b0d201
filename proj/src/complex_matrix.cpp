#include "eigensense/complex_matrix.hpp"

#include <cmath>
#include <string>

#include "eigensense/errors.hpp"

namespace eigensense {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("matrix must have at least one row and one column, got " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    check_shape(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_shape(rows, cols);
    if (entries_.size() != rows * cols) {
        throw DimensionError("entry count " + std::to_string(entries_.size()) +
                             " does not match " + std::to_string(rows) + "x" +
                             std::to_string(cols));
    }
}

HermitianMatrix::HermitianMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    check_shape(dim, dim);
    if (entries_.size() != dim * dim) {
        throw DimensionError("entry count " + std::to_string(entries_.size()) +
                             " does not match dim " + std::to_string(dim));
    }

    double scale = 0.0;
    for (const Complex& e : entries_) {
        scale = std::max(scale, std::abs(e));
    }
    const double tol = 1e-12 * scale;

    for (std::size_t i = 0; i < dim_; ++i) {
        if (std::abs(entries_[i * dim_ + i].imag()) > tol) {
            throw DomainError("diagonal entry " + std::to_string(i) +
                              " has a non-negligible imaginary part");
        }
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const Complex upper = entries_[i * dim_ + j];
            const Complex lower = entries_[j * dim_ + i];
            if (std::abs(upper - std::conj(lower)) > tol) {
                throw DomainError("entries (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") and (" + std::to_string(j) + "," + std::to_string(i) +
                                  ") are not conjugate within tolerance");
            }
        }
    }

    // Upper triangle authoritative: mirror it and strip diagonal dust.
    for (std::size_t i = 0; i < dim_; ++i) {
        entries_[i * dim_ + i] = Complex(entries_[i * dim_ + i].real(), 0.0);
        for (std::size_t j = i + 1; j < dim_; ++j) {
            entries_[j * dim_ + i] = std::conj(entries_[i * dim_ + j]);
        }
    }
}

double HermitianMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += entries_[i * dim_ + i].real();
    }
    return t;
}

double HermitianMatrix::frobenius_norm() const noexcept {
    double sum = 0.0;
    for (const Complex& e : entries_) {
        sum += std::norm(e);
    }
    return std::sqrt(sum);
}

}  // namespace eigensense
