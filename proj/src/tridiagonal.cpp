#include "logson/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "logson/error.hpp"

namespace logson {

std::vector<double> TridiagonalMatrix::apply(std::span<const double> x) const {
    const std::size_t m = size();
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i - 1] * x[i - 1];
        if (i + 1 < m) s += upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

std::vector<double> TridiagonalMatrix::solve(std::span<const double> rhs) const {
    const std::size_t m = size();
    std::vector<double> dl = lower, d = diag, du = upper;
    std::vector<double> b(rhs.begin(), rhs.end());
    std::vector<double> du2(m > 2 ? m - 2 : 0, 0.0);

    auto singular = [] {
        throw SolverError(SolverError::Kind::SingularLinearization, "tridiagonal solve: zero pivot");
    };

    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) singular();
            const double fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            const double temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if (i + 2 < m) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            const double tb = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tb - fact * b[i + 1];
        }
    }
    if (m == 0) return b;
    if (d[m - 1] == 0.0) singular();

    b[m - 1] /= d[m - 1];
    if (m > 1) b[m - 2] = (b[m - 2] - du[m - 2] * b[m - 1]) / d[m - 2];
    for (std::size_t k = m; k-- > 2;) {
        const std::size_t i = k - 2;
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
    return b;
}

std::vector<double> SymmetricTridiagonal::apply(std::span<const double> x) const {
    const std::size_t m = size();
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += off[i - 1] * x[i - 1];
        if (i + 1 < m) s += off[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

std::size_t SymmetricTridiagonal::count_below(double x) const {
    const std::size_t m = size();
    const auto [lo, hi] = gershgorin();
    const double pivmin = std::numeric_limits<double>::min() * std::max({1.0, std::abs(lo), std::abs(hi)});
    std::size_t negatives = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        q = diag[i] - x - (i > 0 ? off[i - 1] * off[i - 1] / q : 0.0);
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++negatives;
    }
    return negatives;
}

std::pair<double, double> SymmetricTridiagonal::gershgorin() const {
    const std::size_t m = size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < m; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(off[i - 1]);
        if (i + 1 < m) radius += std::abs(off[i]);
        lo = std::min(lo, diag[i] - radius);
        hi = std::max(hi, diag[i] + radius);
    }
    return {lo, hi};
}

TridiagonalMatrix SymmetricTridiagonal::as_general() const {
    return TridiagonalMatrix{off, diag, off};
}

namespace {

double kth_eigenvalue(const SymmetricTridiagonal& t, std::size_t k, double lo, double hi) {
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * scale;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (t.count_below(mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double norm2(std::span<const double> v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, std::size_t count) {
    count = std::min(count, t.size());
    const auto [lo, hi] = t.gershgorin();
    std::vector<double> values(count);
    for (std::size_t k = 0; k < count; ++k) values[k] = kth_eigenvalue(t, k, lo, hi);
    return values;
}

EigenPairs lowest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count) {
    EigenPairs out;
    out.values = lowest_eigenvalues(t, count);
    const std::size_t m = t.size();
    const auto [glo, ghi] = t.gershgorin();
    const double tnorm = std::max({1.0, std::abs(glo), std::abs(ghi)});
    const double cluster = 1e-7 * tnorm;
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t k = 0; k < out.values.size(); ++k) {
        const double lambda = out.values[k];
        TridiagonalMatrix shifted = t.as_general();

        // Deterministic start vector with components along every eigenvector.
        std::vector<double> v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i + k));

        double shift = lambda;
        bool ok = false;
        for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
            for (std::size_t i = 0; i < m; ++i) shifted.diag[i] = t.diag[i] - shift;
            try {
                for (int it = 0; it < 6; ++it) {
                    v = shifted.solve(v);
                    for (std::size_t j = 0; j < k; ++j) {
                        if (std::abs(out.values[j] - lambda) > cluster) continue;
                        const auto& q = out.vectors[j];
                        const double proj = std::inner_product(v.begin(), v.end(), q.begin(), 0.0);
                        for (std::size_t i = 0; i < m; ++i) v[i] -= proj * q[i];
                    }
                    const double nv = norm2(v);
                    for (double& x : v) x /= nv;
                }
                ok = true;
            } catch (const SolverError&) {
                shift = lambda + (attempt + 1) * 16.0 * eps * tnorm;
                std::fill(v.begin(), v.end(), 1.0);
            }
        }

        const auto tv = t.apply(v);
        double res = 0.0;
        for (std::size_t i = 0; i < m; ++i) res += (tv[i] - lambda * v[i]) * (tv[i] - lambda * v[i]);
        res = std::sqrt(res);
        if (!ok || !std::isfinite(res) || res > 1e-8 * tnorm) {
            throw SolverError(SolverError::Kind::EigenNonConvergence,
                              "inverse iteration failed for eigenvalue index " + std::to_string(k),
                              {"residual=" + std::to_string(res)});
        }
        out.vectors.push_back(std::move(v));
    }
    return out;
}

}  // namespace logson
