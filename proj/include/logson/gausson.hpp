#pragma once

#include <utility>

#include "logson/radial_grid.hpp"

namespace logson {

/// Closed-form integrals of the Gausson exp((omega + n - |x|^2)/2).
struct GaussonInvariants {
    double omega = 0.0;
    int dim = 3;
    double mass = 0.0;          // e^{omega+n} pi^{n/2}
    double kinetic = 0.0;       // (n/2) mass
    double entropy = 0.0;       // (omega + n/2) mass
    double action_m = 0.0;      // mass / 2
    double center_value = 0.0;  // e^{(omega+n)/2}

    bool operator==(const GaussonInvariants&) const = default;
};

/// Samples exp((omega + n - r^2)/2).
Field gausson_field(GridPtr grid, double omega);

/// Throws std::invalid_argument for dim < 3.
GaussonInvariants gausson_invariants(double omega, int dim);

/// If u solves -Delta u + omega u = u log u^2, then lambda*u solves it with
/// omega + log lambda^2. Returns (lambda*u, omega + log lambda^2). Rejects lambda = 0.
std::pair<Field, double> scale_solution(const Field& u, double lambda, double omega);

}  // namespace logson
