// Test-only oracles, independent of the library's solver paths: closed-form
// eigenvalues for dim <= 3, adaptive quadrature, and random Hermitian /
// unitary generators.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "eigensense/complex_matrix.hpp"
#include "eigensense/rng.hpp"
#include "eigensense/signal.hpp"

namespace oracles {

using eigensense::Complex;
using eigensense::ComplexMatrix;
using eigensense::HermitianMatrix;

/// Roots of the characteristic polynomial of a Hermitian 2x2.
inline std::array<double, 2> eig2_closed_form(const HermitianMatrix& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double cross = std::norm(m(0, 1));
    const double mean = 0.5 * (a + d);
    const double radius = std::sqrt(0.25 * (a - d) * (a - d) + cross);
    return {mean - radius, mean + radius};
}

/// Trigonometric closed form for the real roots of a Hermitian 3x3.
inline std::array<double, 3> eig3_closed_form(const HermitianMatrix& m) {
    const double q = (m(0, 0).real() + m(1, 1).real() + m(2, 2).real()) / 3.0;
    const double p1 = std::norm(m(0, 1)) + std::norm(m(0, 2)) + std::norm(m(1, 2));
    double p2 = 2.0 * p1;
    for (int i = 0; i < 3; ++i) {
        const double d = m(i, i).real() - q;
        p2 += d * d;
    }
    if (p2 == 0.0) {
        return {q, q, q};  // scalar matrix
    }
    const double p = std::sqrt(p2 / 6.0);

    // B = (M - q I) / p; det(B) is real for Hermitian input.
    auto b = [&](int i, int j) -> Complex {
        Complex v = m(i, j);
        if (i == j) {
            v -= q;
        }
        return v / p;
    };
    const Complex det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;

    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    std::array<double, 3> out{e1, e2, e3};
    std::sort(out.begin(), out.end());
    return out;
}

/// Random Hermitian matrix with entries of unit scale.
inline HermitianMatrix random_hermitian(std::size_t dim, eigensense::Rng& rng) {
    std::vector<Complex> entries(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        auto [d, unused] = eigensense::gaussian_pair(rng, 1.0);
        (void)unused;
        entries[i * dim + i] = Complex(d, 0.0);
        for (std::size_t j = i + 1; j < dim; ++j) {
            auto [re, im] = eigensense::gaussian_pair(rng, 0.5);
            entries[i * dim + j] = Complex(re, im);
            entries[j * dim + i] = Complex(re, -im);
        }
    }
    return {dim, std::move(entries)};
}

/// Random K x N complex Gaussian block.
inline ComplexMatrix random_block(std::size_t rows, std::size_t cols, eigensense::Rng& rng) {
    ComplexMatrix y(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            auto [re, im] = eigensense::gaussian_pair(rng, 0.5);
            y(i, j) = Complex(re, im);
        }
    }
    return y;
}

/// Random unitary built as a product of complex Givens rotations.
inline ComplexMatrix random_unitary(std::size_t dim, eigensense::Rng& rng) {
    ComplexMatrix u(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        u(i, i) = Complex(1.0, 0.0);
    }
    for (std::size_t p = 0; p < dim; ++p) {
        for (std::size_t q = p + 1; q < dim; ++q) {
            const double theta = 2.0 * std::numbers::pi * rng.next_unit();
            const double phase = 2.0 * std::numbers::pi * rng.next_unit();
            const double c = std::cos(theta);
            const Complex s = std::polar(std::sin(theta), phase);
            for (std::size_t k = 0; k < dim; ++k) {
                const Complex up = u(k, p);
                const Complex uq = u(k, q);
                u(k, p) = c * up - std::conj(s) * uq;
                u(k, q) = s * up + c * uq;
            }
        }
    }
    return u;
}

/// U * G * U^H as a HermitianMatrix (validated on construction).
inline HermitianMatrix conjugate_by(const ComplexMatrix& u, const HermitianMatrix& g) {
    const std::size_t n = g.dim();
    ComplexMatrix gu(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum{};
            for (std::size_t k = 0; k < n; ++k) {
                sum += g(i, k) * std::conj(u(j, k));
            }
            gu(i, j) = sum;
        }
    }
    std::vector<Complex> entries(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum{};
            for (std::size_t k = 0; k < n; ++k) {
                sum += u(i, k) * gu(k, j);
            }
            entries[i * n + j] = sum;
        }
    }
    // Scrub rounding skew so construction sees an exactly Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        entries[i * n + i] = Complex(entries[i * n + i].real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex mean = 0.5 * (entries[i * n + j] + std::conj(entries[j * n + i]));
            entries[i * n + j] = mean;
            entries[j * n + i] = std::conj(mean);
        }
    }
    return {n, std::move(entries)};
}

/// Recursive adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 40) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

    struct Impl {
        const std::function<double(double)>& f;
        double tol;
        double recurse(double a, double m, double b, double fa, double fm, double fb,
                       double whole, double eps, int depth) const {
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
                return left + right + (left + right - whole) / 15.0;
            }
            return recurse(a, lm, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
                   recurse(m, rm, b, fm, frm, fb, right, eps / 2.0, depth - 1);
        }
    };
    return Impl{f, tol}.recurse(a, m, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace oracles
