#include "logson/gausson.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace logson {

Field gausson_field(GridPtr grid, double omega) {
    const double shift = omega + grid->dim();
    return Field::sample(std::move(grid), [shift](double r) { return std::exp(0.5 * (shift - r * r)); });
}

GaussonInvariants gausson_invariants(double omega, int dim) {
    if (dim < 3) throw std::invalid_argument("gausson_invariants: dimension must be >= 3");
    const double n = dim;
    GaussonInvariants g;
    g.omega = omega;
    g.dim = dim;
    g.mass = std::exp(omega + n) * std::pow(std::numbers::pi, n / 2.0);
    g.kinetic = 0.5 * n * g.mass;
    g.entropy = (omega + 0.5 * n) * g.mass;
    g.action_m = 0.5 * g.mass;
    g.center_value = std::exp(0.5 * (omega + n));
    return g;
}

std::pair<Field, double> scale_solution(const Field& u, double lambda, double omega) {
    if (lambda == 0.0 || !std::isfinite(lambda)) throw std::invalid_argument("scale_solution: lambda must be nonzero");
    return {u.scaled(lambda), omega + 2.0 * std::log(std::abs(lambda))};
}

}  // namespace logson
