#include "logson/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "logson/error.hpp"
#include "logson/parallel.hpp"

namespace logson {

namespace {

// C(n+k-1, k) for k >= 0, exact in integer arithmetic for the sizes used here.
long mu(int k, int n) {
    if (k < 0) return 0;
    long c = 1;
    for (int j = 1; j <= k; ++j) c = c * (n - 1 + j) / j;
    return c;
}

}  // namespace

double sector_eigenvalue(int k, int dim) {
    if (k < 0 || dim < 3) throw ValidationError("sector_eigenvalue: need k >= 0 and n >= 3");
    return static_cast<double>(k) * (k + dim - 2);
}

long sector_multiplicity(int k, int dim) {
    if (k < 0 || dim < 3) throw ValidationError("sector_multiplicity: need k >= 0 and n >= 3");
    return mu(k, dim) - mu(k - 2, dim);
}

HarmonicSector harmonic_sector(int k, int dim) {
    return {k, dim, sector_eigenvalue(k, dim), sector_multiplicity(k, dim)};
}

std::vector<double> SectorOperator::apply(std::span<const double> psi) const {
    const auto w = grid->weights();
    std::vector<double> v(psi.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sqrt(w[i]) * psi[i];
    auto out = matrix.apply(v);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] /= std::sqrt(w[i]);
    return out;
}

SectorOperator assemble_sector(GridPtr grid, int k) {
    if (!grid) throw ValidationError("assemble_sector: missing grid");
    SectorOperator op;
    op.sector = harmonic_sector(k, grid->dim());
    op.grid = grid;
    op.matrix = radial_laplacian(grid).symmetric;
    const double n = grid->dim();
    const std::size_t m = grid->size();
    if (k == 1) {
        // psi ~ r at the origin. Faces with c_{i+1/2} - c_{i-1/2} = (n-1) |S^{n-1}| r_i^{n-2}
        // make every row annihilate psi = r, as the continuous operator does; for n = 3
        // they coincide with the Laplacian's own faces.
        const auto w = grid->weights();
        std::vector<double> c(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            c[i + 1] = c[i] + op.sector.lambda * grid->sphere_area() * std::pow(grid->node(i), n - 2.0);
        for (std::size_t i = 0; i < m; ++i) {
            op.matrix.diag[i] = (c[i] + c[i + 1]) / w[i];
            if (i + 1 < m) op.matrix.off[i] = -c[i + 1] / std::sqrt(w[i] * w[i + 1]);
        }
    }
    op.potential.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = grid->node(i);
        op.potential[i] = r * r + op.sector.lambda / (r * r) - n - 2.0;
        op.matrix.diag[i] += op.potential[i];
    }
    return op;
}

SectorSpectrum sector_spectrum(const SectorOperator& op, std::size_t count) {
    if (count == 0 || count > op.grid->size()) throw ValidationError("sector_spectrum: count must be in [1, m]");
    const auto pairs = lowest_eigenpairs(op.matrix, count);
    const auto w = op.grid->weights();
    SectorSpectrum s;
    s.sector = op.sector;
    s.values = pairs.values;
    for (const auto& v : pairs.vectors) {
        // The Liouville vector is unit in the Euclidean norm, so psi is unit in <.,.>_w.
        std::vector<double> psi(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) psi[i] = v[i] / std::sqrt(w[i]);
        const auto big = std::max_element(psi.begin(), psi.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
        if (*big < 0.0)
            for (double& x : psi) x = -x;
        s.sign_changes.push_back(count_sign_changes(psi, 1e-8));
        s.vectors.push_back(std::move(psi));
    }
    return s;
}

double default_zero_tol(const RadialGrid& grid) {
    const double q = grid.step() / 0.01;
    return 1e-3 * q * q;
}

double cosine_similarity(const RadialGrid& grid, std::span<const double> a, std::span<const double> b) {
    const double na = weighted_norm(grid, a), nb = weighted_norm(grid, b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::abs(inner(grid, a, b)) / (na * nb);
}

SpectrumReport certify_nondegeneracy(GridPtr grid, int k_max, double zero_tol, std::size_t per_sector) {
    if (!grid) throw ValidationError("certify_nondegeneracy: missing grid");
    if (k_max < 2) throw ValidationError("k_max must be >= 2 (sector positivity needs k = 2)");
    if (!(zero_tol > 0.0) || !std::isfinite(zero_tol)) throw ValidationError("zero_tol must be positive");

    SpectrumReport rep;
    rep.dim = grid->dim();
    rep.k_max = k_max;
    rep.zero_tol = zero_tol;
    rep.sectors = parallel_map(static_cast<std::size_t>(k_max) + 1, [&](std::size_t k) {
        return sector_spectrum(assemble_sector(grid, static_cast<int>(k)), per_sector);
    });

    const Field gauss = Field::sample(grid, [](double r) { return std::exp(-0.5 * r * r); });
    const Field mode = Field::sample(grid, [](double r) { return -r * std::exp(-0.5 * r * r); });
    rep.ground_similarity = cosine_similarity(*grid, rep.sectors[0].vectors[0], gauss.values);

    for (const auto& s : rep.sectors) {
        for (std::size_t j = 0; j < s.values.size(); ++j) {
            const double ev = s.values[j];
            if (std::abs(ev) < zero_tol) {
                KernelCandidate c;
                c.k = s.sector.k;
                c.eigenvalue = ev;
                c.multiplicity = s.sector.multiplicity;
                c.eigenvector = s.vectors[j];
                c.mode_similarity = cosine_similarity(*grid, s.vectors[j], mode.values);
                rep.kernel_candidates.push_back(std::move(c));
                rep.kernel_dimension += s.sector.multiplicity;
            } else if (std::abs(ev) < 2.0 * zero_tol) {
                rep.ambiguous.emplace_back(s.sector.k, ev);
            }
        }
    }
    rep.inconclusive = !rep.ambiguous.empty();
    rep.nondegenerate = !rep.inconclusive && rep.kernel_candidates.size() == 1 && rep.kernel_candidates[0].k == 1 &&
                        rep.kernel_dimension == rep.dim;
    rep.analytic_note = "sectors k > " + std::to_string(k_max) +
                        " not computed: A_k = A_1 + (lambda_k - lambda_1)/r^2 with lambda_k > lambda_1, and A_1 >= 0 "
                        "with kernel spanned by g', so A_k is positive definite";
    return rep;
}

}  // namespace logson
