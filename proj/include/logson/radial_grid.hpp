#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "logson/tridiagonal.hpp"

namespace logson {

/// Uniform radial mesh r_i = i*h, i = 1..m, on (0, r_max) with h = r_max/(m+1).
/// The origin and r_max are not nodes: fields obey u'(0) = 0 and u(r_max) = 0.
///
/// Quadrature weights w_i = |S^{n-1}| r_i^{n-1} h turn nodal sums into integrals over R^n
/// of radial functions (trapezoid rule; both end contributions vanish).
///
/// Immutable after construction; share it through GridPtr.
class RadialGrid {
public:
    static constexpr std::size_t kMinNodes = 16;

    RadialGrid(int dim, double r_max, std::size_t nodes);

    /// Grid with spacing as close to `step` as r_max allows (m = round(r_max/step) - 1).
    static std::shared_ptr<const RadialGrid> with_step(int dim, double r_max, double step);

    int dim() const { return dim_; }
    double r_max() const { return r_max_; }
    std::size_t size() const { return r_.size(); }
    double step() const { return h_; }
    /// Surface area of the unit sphere S^{n-1}.
    double sphere_area() const { return sphere_area_; }

    std::span<const double> nodes() const { return r_; }
    std::span<const double> weights() const { return w_; }
    double node(std::size_t i) const { return r_[i]; }
    double weight(std::size_t i) const { return w_[i]; }

    /// Face conductances c_{i+1/2}, i = 0..m. Face 0 sits between the origin and r_1 and
    /// carries zero flux; face m joins r_m to the Dirichlet point r_max. The weighted
    /// operator is  (-Delta u)_i = -(c_{i+1/2}(u_{i+1}-u_i) - c_{i-1/2}(u_i-u_{i-1})) / w_i.
    ///
    /// c is chosen so the stencil is exact on constants and on r^2 in every row, which for
    /// n = 3 reduces to c ∝ r_i r_{i+1} (the classical centred scheme).
    std::span<const double> conductances() const { return c_; }

    bool operator==(const RadialGrid& other) const {
        return dim_ == other.dim_ && r_max_ == other.r_max_ && r_.size() == other.r_.size();
    }

private:
    int dim_;
    double r_max_;
    double h_;
    double sphere_area_;
    std::vector<double> r_;
    std::vector<double> w_;
    std::vector<double> c_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Real radial profile sampled on a grid.
struct Field {
    GridPtr grid;
    std::vector<double> values;

    Field() = default;
    Field(GridPtr g, std::vector<double> v);
    /// Samples f(r) at every node.
    static Field sample(GridPtr g, const std::function<double(double)>& f);
    static Field zeros(GridPtr g);

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    Field scaled(double lambda) const;

    bool operator==(const Field& other) const;
};

/// Sum of w_i f_i: the integral over R^n of a radial function.
double integrate(const Field& f);
double integrate(const RadialGrid& grid, std::span<const double> values);

/// Weighted inner product sum w_i u_i v_i.
double inner(const RadialGrid& grid, std::span<const double> u, std::span<const double> v);
/// sqrt(inner(u, u)), the L2(R^n) norm.
double weighted_norm(const RadialGrid& grid, std::span<const double> u);

/// ||grad u||_2^2 from the flux form of the Laplacian stencil; equals <-Delta_h u, u>_w
/// exactly. Second-order accurate.
double gradient_sq_norm(const Field& u);

/// ||grad u||_2^2 from five-point centred derivatives (even reflection at the origin, odd
/// reflection at r_max) and the node quadrature. Fourth-order accurate; used where an
/// identity is saturated and O(h^2) errors would decide its sign.
double gradient_sq_norm_fourth_order(const Field& u);

/// Discretized -Delta_r with Neumann closure at 0 and Dirichlet at r_max, in two
/// equivalent forms:
///   weighted:  the m x m matrix acting on nodal values; symmetric in <.,.>_w;
///   symmetric: W^{1/2} A W^{-1/2}, the Liouville form acting on v_i = sqrt(w_i) u_i,
///              a plain symmetric tridiagonal matrix with the same spectrum.
struct RadialLaplacian {
    GridPtr grid;
    TridiagonalMatrix weighted;
    SymmetricTridiagonal symmetric;

    std::vector<double> apply(std::span<const double> u) const { return weighted.apply(u); }
    Field apply(const Field& u) const { return Field(u.grid, weighted.apply(u.values)); }

    /// Maps a Liouville-form vector back to nodal values (divides by sqrt(w_i)).
    std::vector<double> from_liouville(std::span<const double> v) const;
    std::vector<double> to_liouville(std::span<const double> u) const;
};

RadialLaplacian radial_laplacian(GridPtr grid);

/// Number of sign changes, skipping entries below rel_floor * max|v|.
int count_sign_changes(std::span<const double> v, double rel_floor = 1e-10);

}  // namespace logson
