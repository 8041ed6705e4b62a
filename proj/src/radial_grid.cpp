#include "logson/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "logson/error.hpp"

namespace logson {

RadialGrid::RadialGrid(int dim, double r_max, std::size_t nodes) : dim_(dim), r_max_(r_max) {
    if (dim < 3) throw ValidationError("dimension must be >= 3, got " + std::to_string(dim));
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ValidationError("r_max must be positive and finite");
    if (nodes < kMinNodes) throw ValidationError("grid needs at least 16 interior nodes");

    const std::size_t m = nodes;
    const double n = dim;
    h_ = r_max / static_cast<double>(m + 1);
    sphere_area_ = 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);

    r_.resize(m);
    w_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        r_[i] = static_cast<double>(i + 1) * h_;
        w_[i] = sphere_area_ * std::pow(r_[i], n - 1.0) * h_;
    }

    // a_{i+1/2} = 2n S(i) / (2i+1) with S(i) = sum_{j<=i} j^{n-1} makes every row exact on
    // r^2; a_{1/2} = 0 is the Neumann closure.
    c_.resize(m + 1);
    const double hscale = sphere_area_ * std::pow(h_, n - 2.0);
    double power_sum = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
        if (i > 0) power_sum += std::pow(static_cast<double>(i), n - 1.0);
        c_[i] = hscale * 2.0 * n * power_sum / (2.0 * static_cast<double>(i) + 1.0);
    }
}

std::shared_ptr<const RadialGrid> RadialGrid::with_step(int dim, double r_max, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("step must be positive and finite");
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ValidationError("r_max must be positive and finite");
    const double cells = std::round(r_max / step);
    if (cells < static_cast<double>(kMinNodes + 1)) throw ValidationError("step too large for r_max (need >= 16 nodes)");
    if (cells > 5e7) throw ValidationError("step too small (grid would exceed 5e7 nodes)");
    return std::make_shared<const RadialGrid>(dim, r_max, static_cast<std::size_t>(cells) - 1);
}

Field::Field(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw std::invalid_argument("field without grid");
    if (values.size() != grid->size())
        throw std::invalid_argument("field has " + std::to_string(values.size()) + " values for a grid of " +
                                    std::to_string(grid->size()) + " nodes");
}

Field Field::sample(GridPtr g, const std::function<double(double)>& f) {
    std::vector<double> v(g->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g->node(i));
    return Field(std::move(g), std::move(v));
}

Field Field::zeros(GridPtr g) {
    std::vector<double> v(g->size(), 0.0);
    return Field(std::move(g), std::move(v));
}

Field Field::scaled(double lambda) const {
    Field out = *this;
    for (double& x : out.values) x *= lambda;
    return out;
}

bool Field::operator==(const Field& other) const {
    if (!grid || !other.grid) return !grid && !other.grid && values == other.values;
    return *grid == *other.grid && values == other.values;
}

double integrate(const RadialGrid& grid, std::span<const double> values) {
    const auto w = grid.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += w[i] * values[i];
    return s;
}

double integrate(const Field& f) { return integrate(*f.grid, f.values); }

double inner(const RadialGrid& grid, std::span<const double> u, std::span<const double> v) {
    const auto w = grid.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * u[i] * v[i];
    return s;
}

double weighted_norm(const RadialGrid& grid, std::span<const double> u) { return std::sqrt(inner(grid, u, u)); }

double gradient_sq_norm(const Field& u) {
    const auto c = u.grid->conductances();
    const auto& v = u.values;
    const std::size_t m = v.size();
    double s = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        const double right = i < m ? v[i] : 0.0;
        const double d = right - v[i - 1];
        s += c[i] * d * d;
    }
    return s;
}

double gradient_sq_norm_fourth_order(const Field& u) {
    const auto& v = u.values;
    const std::size_t m = v.size();
    const double h = u.grid->step();
    // u(0) from the even quartic a + b r^2 + c r^4 through r_1, r_2, r_3.
    const double u0 = 1.5 * v[0] - 0.6 * v[1] + 0.1 * v[2];
    auto at = [&](long j) -> double {
        if (j < 0) return v[static_cast<std::size_t>(-j) - 1];
        if (j == 0) return u0;
        if (j <= static_cast<long>(m)) return v[static_cast<std::size_t>(j) - 1];
        if (j == static_cast<long>(m) + 1) return 0.0;
        return -v[static_cast<std::size_t>(2 * (static_cast<long>(m) + 1) - j) - 1];
    };
    const auto w = u.grid->weights();
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const long j = static_cast<long>(i) + 1;
        const double d = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / (12.0 * h);
        s += w[i] * d * d;
    }
    return s;
}

std::vector<double> RadialLaplacian::from_liouville(std::span<const double> v) const {
    const auto w = grid->weights();
    std::vector<double> u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) u[i] = v[i] / std::sqrt(w[i]);
    return u;
}

std::vector<double> RadialLaplacian::to_liouville(std::span<const double> u) const {
    const auto w = grid->weights();
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] * std::sqrt(w[i]);
    return v;
}

RadialLaplacian radial_laplacian(GridPtr grid) {
    const std::size_t m = grid->size();
    const auto c = grid->conductances();
    const auto w = grid->weights();

    RadialLaplacian op;
    op.grid = grid;
    op.weighted.diag.resize(m);
    op.weighted.lower.resize(m - 1);
    op.weighted.upper.resize(m - 1);
    op.symmetric.diag.resize(m);
    op.symmetric.off.resize(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        const double d = (c[i] + c[i + 1]) / w[i];
        op.weighted.diag[i] = d;
        op.symmetric.diag[i] = d;
        if (i + 1 < m) {
            op.weighted.upper[i] = -c[i + 1] / w[i];
            op.weighted.lower[i] = -c[i + 1] / w[i + 1];
            op.symmetric.off[i] = -c[i + 1] / std::sqrt(w[i] * w[i + 1]);
        }
    }
    return op;
}

int count_sign_changes(std::span<const double> v, double rel_floor) {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    if (vmax == 0.0) return 0;
    const double floor = rel_floor * vmax;
    int changes = 0;
    int last = 0;
    for (double x : v) {
        if (std::abs(x) <= floor) continue;
        const int s = x > 0 ? 1 : -1;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace logson
