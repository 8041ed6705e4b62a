#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace logson {

/// General tridiagonal matrix. Row i holds lower[i-1], diag[i], upper[i].
struct TridiagonalMatrix {
    std::vector<double> lower;  // size m-1
    std::vector<double> diag;   // size m
    std::vector<double> upper;  // size m-1

    std::size_t size() const { return diag.size(); }

    std::vector<double> apply(std::span<const double> x) const;

    /// Solves A x = b by Gaussian elimination with partial pivoting (LAPACK gtsv style).
    /// Throws SolverError(SingularLinearization) on an exactly zero pivot.
    std::vector<double> solve(std::span<const double> b) const;
};

/// Symmetric tridiagonal matrix: diagonal d and off-diagonal e (e[i] couples i and i+1).
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }

    std::vector<double> apply(std::span<const double> x) const;

    /// Number of eigenvalues strictly less than x (Sturm sequence / LDL^T inertia).
    std::size_t count_below(double x) const;

    /// Gershgorin interval containing the whole spectrum.
    std::pair<double, double> gershgorin() const;

    TridiagonalMatrix as_general() const;
};

struct EigenPairs {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // unit Euclidean norm
};

/// Lowest `count` eigenpairs: Sturm bisection for the values, inverse iteration for the
/// vectors (re-orthogonalized inside clusters). Throws SolverError(EigenNonConvergence)
/// when an eigenvector fails its residual check.
EigenPairs lowest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count);

/// Lowest `count` eigenvalues only.
std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, std::size_t count);

}  // namespace logson
