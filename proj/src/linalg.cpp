#include "eigensense/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eigensense/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eigensense {

namespace {

// Fixed-order dot product of rows i and j: (1/N) sum_k Y[i][k] conj(Y[j][k]).
// Written with explicit real arithmetic so the compiler can vectorize it.
Complex row_dot(const ComplexMatrix& y, std::size_t i, std::size_t j) {
    const Complex* a = y.row(i).data();
    const Complex* b = y.row(j).data();
    const std::size_t n = y.cols();
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ar = a[k].real(), ai = a[k].imag();
        const double br = b[k].real(), bi = b[k].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    return {re * inv_n, im * inv_n};
}

double row_power(const ComplexMatrix& y, std::size_t i) {
    double sum = 0.0;
    for (const Complex& e : y.row(i)) {
        sum += std::norm(e);
    }
    return sum / static_cast<double>(y.cols());
}

std::vector<Complex> gram_entries(const ComplexMatrix& y, bool parallel) {
    const std::size_t k = y.rows();
    std::vector<Complex> g(k * k);
    (void)parallel;

    // Each (i, j) entry is independent; the inner sum order never changes,
    // so serial and parallel results are bit-identical.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::size_t i = 0; i < k; ++i) {
        g[i * k + i] = Complex(row_power(y, i), 0.0);
        for (std::size_t j = i + 1; j < k; ++j) {
            const Complex v = row_dot(y, i, j);
            g[i * k + j] = v;
            g[j * k + i] = std::conj(v);
        }
    }
    return g;
}

double off_diagonal_norm(const std::vector<Complex>& a, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sum += std::norm(a[i * n + j]);
        }
    }
    return std::sqrt(2.0 * sum);
}

// One cyclic Jacobi pass over the upper triangle. Returns the number of
// rotations applied; entries below skip_norm2 (squared magnitude) are left
// alone, which is lossless for convergence because their total off-diagonal
// mass stays under the sweep threshold.
std::size_t jacobi_sweep(std::vector<Complex>& a, std::size_t n, double skip_norm2,
                         ComplexMatrix* vectors) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const Complex apq = a[p * n + q];
            const double r2 = std::norm(apq);
            if (r2 <= skip_norm2) {
                continue;
            }
            ++rotations;

            const double app = a[p * n + p].real();
            const double aqq = a[q * n + q].real();
            const double r = std::sqrt(r2);

            // Unitary 2x2 rotation J = [[c, s], [-conj(s), c]] zeroing (p,q):
            // t solves t^2 + 2 tau t - 1 = 0, the smaller-magnitude root.
            const double tau = (aqq - app) / (2.0 * r);
            const double t =
                (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double sigma = t * c;
            const Complex s = (sigma / r) * apq;  // sigma * e^{i arg(apq)}
            const double sr = s.real(), si = s.imag();

            a[p * n + p] = Complex(app - t * r, 0.0);
            a[q * n + q] = Complex(aqq + t * r, 0.0);
            a[p * n + q] = Complex(0.0, 0.0);
            a[q * n + p] = Complex(0.0, 0.0);

            // Rows p and q: x' = c x - s y, y' = conj(s) x + c y.
            Complex* rp = a.data() + p * n;
            Complex* rq = a.data() + q * n;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == p || k == q) {
                    continue;
                }
                const double xr = rp[k].real(), xi = rp[k].imag();
                const double yr = rq[k].real(), yi = rq[k].imag();
                rp[k] = Complex(c * xr - (sr * yr - si * yi), c * xi - (sr * yi + si * yr));
                rq[k] = Complex(sr * xr + si * xi + c * yr, sr * xi - si * xr + c * yi);
            }
            // Columns follow by conjugate symmetry.
            for (std::size_t k = 0; k < n; ++k) {
                if (k == p || k == q) {
                    continue;
                }
                a[k * n + p] = std::conj(rp[k]);
                a[k * n + q] = std::conj(rq[k]);
            }

            if (vectors != nullptr) {
                ComplexMatrix& v = *vectors;
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vp = v(k, p);
                    const Complex vq = v(k, q);
                    v(k, p) = c * vp - std::conj(s) * vq;
                    v(k, q) = s * vp + c * vq;
                }
            }
        }
    }
    return rotations;
}

EigenDecomposition jacobi_eigh(const HermitianMatrix& g, double tol, int max_sweeps,
                               bool want_vectors) {
    if (!(tol > 0.0)) {
        throw DomainError("eigh tolerance must be positive");
    }
    if (max_sweeps < 0) {
        throw DomainError("sweep budget must be nonnegative");
    }

    const std::size_t n = g.dim();
    std::vector<Complex> a(g.entries().begin(), g.entries().end());
    const double trace = g.trace();
    const double off_target = tol * g.frobenius_norm();
    // Safe per-entry skip: n^2/2 entries each below (target/n)^2 cannot sum
    // past the target.
    const double skip_norm2 = (off_target / static_cast<double>(n)) * (off_target / static_cast<double>(n));

    ComplexMatrix vectors(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        vectors(i, i) = Complex(1.0, 0.0);
    }

    int sweeps = 0;
    bool converged = off_diagonal_norm(a, n) <= off_target;
    while (!converged && sweeps < max_sweeps) {
        jacobi_sweep(a, n, skip_norm2, want_vectors ? &vectors : nullptr);
        ++sweeps;
        converged = off_diagonal_norm(a, n) <= off_target;
    }
    if (!converged) {
        throw SolverError("jacobi eigensolver did not converge after " +
                              std::to_string(sweeps) + " sweeps",
                          sweeps);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&a, n](std::size_t i, std::size_t j) {
        return a[i * n + i].real() < a[j * n + j].real();
    });

    EigenSpectrum spectrum;
    spectrum.values.reserve(n);
    for (std::size_t idx : order) {
        spectrum.values.push_back(a[idx * n + idx].real());
    }
    spectrum.trace = trace;
    spectrum.iterations = sweeps;

    if (!want_vectors) {
        return {std::move(spectrum), ComplexMatrix(1, 1)};
    }
    ComplexMatrix sorted(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            sorted(i, j) = vectors(i, order[j]);
        }
    }
    return {std::move(spectrum), std::move(sorted)};
}

}  // namespace

EigenSpectrum EigenSpectrum::from_values(std::vector<double> values) {
    if (values.empty()) {
        throw DimensionError("spectrum needs at least one value");
    }
    std::sort(values.begin(), values.end());
    EigenSpectrum s;
    s.trace = std::accumulate(values.begin(), values.end(), 0.0);
    s.values = std::move(values);
    return s;
}

HermitianMatrix gram(const ComplexMatrix& y) {
    return {y.rows(), gram_entries(y, true)};
}

HermitianMatrix gram_serial(const ComplexMatrix& y) {
    return {y.rows(), gram_entries(y, false)};
}

EigenSpectrum eigh(const HermitianMatrix& g, double tol, int max_sweeps) {
    return jacobi_eigh(g, tol, max_sweeps, false).spectrum;
}

EigenDecomposition eigh_with_vectors(const HermitianMatrix& g, double tol, int max_sweeps) {
    return jacobi_eigh(g, tol, max_sweeps, true);
}

std::pair<double, double> extreme_eigs(const HermitianMatrix& g) {
    const EigenSpectrum s = eigh(g);
    return {s.min(), s.max()};
}

}  // namespace eigensense
