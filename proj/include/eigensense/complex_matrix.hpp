#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace eigensense {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Houses the K x N block of sensor samples
/// as well as general rectangular intermediates.
class ComplexMatrix {
public:
    /// Zero-filled rows x cols matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);

    /// Takes ownership of row-major entries; entries.size() must equal rows*cols.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept {
        return entries_[i * cols_ + j];
    }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
        return entries_[i * cols_ + j];
    }

    std::span<const Complex> row(std::size_t i) const noexcept {
        return {entries_.data() + i * cols_, cols_};
    }
    std::span<Complex> row(std::size_t i) noexcept {
        return {entries_.data() + i * cols_, cols_};
    }

    std::span<const Complex> entries() const noexcept { return entries_; }

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

/// Hermitian matrix with the upper triangle authoritative.
///
/// Construction validates conjugate symmetry and realness of the diagonal
/// (relative to the largest entry magnitude), then stores an exactly
/// Hermitian copy mirrored from the upper triangle.
class HermitianMatrix {
public:
    HermitianMatrix(std::size_t dim, std::vector<Complex> entries);

    std::size_t dim() const noexcept { return dim_; }

    const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
        return entries_[i * dim_ + j];
    }

    std::span<const Complex> entries() const noexcept { return entries_; }

    /// Sum of the (real) diagonal.
    double trace() const noexcept;

    double frobenius_norm() const noexcept;

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

}  // namespace eigensense
