#pragma once

#include <string>
#include <vector>

#include "logson/radial_grid.hpp"
#include "logson/tridiagonal.hpp"

namespace logson {

/// Degree-k spherical harmonics on S^{n-1}: eigenvalue k(k+n-2) of -Delta_S.
struct HarmonicSector {
    int k = 0;
    int dim = 3;
    double lambda = 0.0;
    long multiplicity = 1;

    bool operator==(const HarmonicSector&) const = default;
};

double sector_eigenvalue(int k, int dim);
/// mu_k - mu_{k-2}, mu_k = C(n+k-1, k), mu_{k<0} = 0.
long sector_multiplicity(int k, int dim);
HarmonicSector harmonic_sector(int k, int dim);

/// A_k psi = -psi'' - (n-1)/r psi' + (r^2 + lambda_k/r^2 - n - 2) psi on the radial grid.
/// `matrix` is the Liouville form (acts on sqrt(w_i) psi_i); apply() acts on nodal values.
struct SectorOperator {
    HarmonicSector sector;
    GridPtr grid;
    SymmetricTridiagonal matrix;
    std::vector<double> potential;  // r_i^2 + lambda_k/r_i^2 - n - 2

    std::vector<double> apply(std::span<const double> psi) const;
};

SectorOperator assemble_sector(GridPtr grid, int k);

struct SectorSpectrum {
    HarmonicSector sector;
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // nodal, unit in <.,.>_w, largest entry positive
    std::vector<int> sign_changes;

    bool operator==(const SectorSpectrum&) const = default;
};

/// Lowest `count` eigenpairs. Throws SolverError(EigenNonConvergence) and
/// ValidationError when count exceeds the grid size.
SectorSpectrum sector_spectrum(const SectorOperator& op, std::size_t count);

struct KernelCandidate {
    int k = 0;
    double eigenvalue = 0.0;
    long multiplicity = 0;
    std::vector<double> eigenvector;
    /// |cos| with the sampled translation mode r e^{-r^2/2} (meaningful for k = 1).
    double mode_similarity = 0.0;

    bool operator==(const KernelCandidate&) const = default;
};

struct SpectrumReport {
    int dim = 3;
    int k_max = 4;
    double zero_tol = 1e-3;
    std::vector<SectorSpectrum> sectors;
    std::vector<KernelCandidate> kernel_candidates;
    /// (k, eigenvalue) pairs with zero_tol <= |eigenvalue| < 2 zero_tol.
    std::vector<std::pair<int, double>> ambiguous;
    bool inconclusive = false;
    bool nondegenerate = false;
    long kernel_dimension = 0;
    /// |cos| of the A_0 ground state with e^{-r^2/2}.
    double ground_similarity = 0.0;
    std::string analytic_note;

    bool operator==(const SpectrumReport&) const = default;
};

/// 1e-3 at h = 0.01, scaled with h^2.
double default_zero_tol(const RadialGrid& grid);

/// Diagonalizes A_0..A_kmax (concurrently) and decides whether the kernel consists of the
/// k = 1 sector alone. Throws ValidationError for k_max < 2 or zero_tol <= 0.
SpectrumReport certify_nondegeneracy(GridPtr grid, int k_max, double zero_tol, std::size_t per_sector = 3);

/// |<a,b>_w| / (|a|_w |b|_w).
double cosine_similarity(const RadialGrid& grid, std::span<const double> a, std::span<const double> b);

}  // namespace logson
