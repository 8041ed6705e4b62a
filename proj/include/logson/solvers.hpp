#pragma once

#include <string>
#include <vector>

#include "logson/functionals.hpp"
#include "logson/radial_grid.hpp"

namespace logson {

/// Radial shooting for the profile with `node_target` sign changes.
/// alpha_lo/alpha_hi <= 0 select the default bracket
/// [e^{(omega+n)/2}, e^{(omega+n)/2 + 2(k+1)}], widened automatically on failure.
struct ShootingConfig {
    double omega = 1.0;
    int node_target = 0;
    double alpha_lo = 0.0;
    double alpha_hi = 0.0;
    double r_max = 0.0;     // 0: take the grid's; otherwise must match it
    double ode_step = 0.0;  // 0: grid step; otherwise must divide it
    int max_bisections = 200;
};

struct SolveReport {
    Field field;
    double omega = 0.0;
    int node_count = 0;
    EnergyBreakdown energy;
    DefectReport defects;
    int iterations = 0;
    bool converged = false;
    /// Shooting: the bisected alpha = u(0). Otherwise the extrapolated u(0) of the field.
    double center_value = 0.0;
    std::vector<double> residual_history;
    std::vector<double> energy_history;  // gradient flow: E after each accepted step
    int floored_nodes = 0;
    std::vector<std::string> notes;

    bool operator==(const SolveReport&) const = default;
};

/// Bisects on u(0) for the radial ODE u'' + (n-1)/r u' = omega u - u log u^2, assembles the
/// profile and hands it to newton_refine. Throws SolverError (BracketFailure, NoConvergence).
SolveReport shoot(const ShootingConfig& config, GridPtr grid);

struct NewtonOptions {
    int max_iterations = 50;
    double target = 1e-10;     // absolute residual norm
    double tolerance = 1e-8;   // converged when residual <= tolerance * ||u||
    double singular_window = 1e-8;
};

/// Newton's method on residual(u, omega) with the tridiagonal linearization
/// -Delta_h + omega - log u^2 - 2. Stops at `target` or when round-off stalls progress.
/// Throws SolverError: SingularLinearization when an eigenvalue of the linearization lies
/// in (-singular_window, singular_window); Divergence on blow-up.
SolveReport newton_refine(const Field& u, double omega, const NewtonOptions& options = {});

struct FlowOptions {
    int max_iterations = 50000;
    double initial_step = 1e-2;
    double min_step = 1e-14;
    double energy_tol = 1e-12;    // relative change of E between accepted steps
    double gradient_tol = 1e-8;   // ||tangential gradient|| / sqrt(nu)
};

/// Minimizes E on {||u||^2 = nu} by preconditioned projected descent with backtracking.
/// The report carries the Lagrange multiplier (entropy - kinetic)/nu as omega.
/// `omega_probe` is the frequency the caller expects; the deviation is logged in notes.
/// Throws DegenerateInput (nu <= 0, zero init), SolverError (StepCollapse, NoConvergence).
SolveReport gradient_flow_sphere(double nu, const Field& init, double omega_probe, const FlowOptions& options = {});

struct NehariProjection {
    Field field;
    double t = 1.0;
};

/// The positive multiple t*u on the Nehari set: log t^2 = (K + omega M - S) / M.
NehariProjection nehari_project(const Field& u, double omega);

/// Fills energy, defects and node_count of a report from its field and omega.
void evaluate(SolveReport& report);

}  // namespace logson
