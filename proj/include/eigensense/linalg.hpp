#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "eigensense/complex_matrix.hpp"

namespace eigensense {

/// Sorted eigenvalues of a Hermitian matrix plus bookkeeping from the solve.
struct EigenSpectrum {
    std::vector<double> values;  ///< ascending
    double trace = 0.0;          ///< trace of the decomposed matrix
    int iterations = 0;          ///< Jacobi sweeps performed

    /// Spectrum assembled from raw values (sorted on entry or not); the trace
    /// is set to their exact running sum. Intended for tests and file-based
    /// inputs that never went through the solver.
    static EigenSpectrum from_values(std::vector<double> values);

    std::size_t size() const noexcept { return values.size(); }
    double min() const noexcept { return values.front(); }
    double max() const noexcept { return values.back(); }
};

/// Spectrum plus the accumulated unitary; column j of `vectors` pairs with
/// `spectrum.values[j]`.
struct EigenDecomposition {
    EigenSpectrum spectrum;
    ComplexMatrix vectors;
};

/// Sample covariance (1/N) * Y * Y^H of a K x N block, Hermitian positive
/// semidefinite by construction. Parallelized over output entries when built
/// with OpenMP; every entry is a fixed-order dot product, so results are
/// bit-identical to gram_serial at any thread count.
HermitianMatrix gram(const ComplexMatrix& y);

/// Single-threaded reference kernel kept for tests and the benchmark.
HermitianMatrix gram_serial(const ComplexMatrix& y);

/// All eigenvalues of a Hermitian matrix by cyclic Jacobi with complex
/// rotations. Convergence: off-diagonal Frobenius mass <= tol * Frobenius
/// norm of the input. Throws SolverError after `max_sweeps` sweeps.
EigenSpectrum eigh(const HermitianMatrix& g, double tol = 1e-12, int max_sweeps = 100);

/// eigh variant that also accumulates the eigenvectors, satisfying
/// || G - V diag(values) V^H ||_F <= 1e-9 || G ||_F.
EigenDecomposition eigh_with_vectors(const HermitianMatrix& g, double tol = 1e-12,
                                     int max_sweeps = 100);

/// (smallest, largest) eigenvalue; equals (first, last) of eigh(g).values.
std::pair<double, double> extreme_eigs(const HermitianMatrix& g);

}  // namespace eigensense
