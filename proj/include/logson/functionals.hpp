#pragma once

#include "logson/radial_grid.hpp"

namespace logson {

/// Integrals entering J(u) = K/2 + (omega+1) M/2 - S/2 and E(u) = K/2 - S/2.
struct EnergyBreakdown {
    double mass = 0.0;            // M = ||u||_2^2
    double kinetic = 0.0;         // K = ||grad u||_2^2
    double entropy = 0.0;         // S = int u^2 log u^2
    double entropy_plus = 0.0;    // int (u^2 log u^2)^+
    double entropy_minus = 0.0;   // int (u^2 log u^2)^-
    double J_value = 0.0;
    double E_value = 0.0;
    double omega = 0.0;

    bool operator==(const EnergyBreakdown&) const = default;
};

/// Defects that vanish together on solutions.
struct DefectReport {
    double residual_norm = 0.0;
    double nehari_defect = 0.0;
    double pohozaev_defect = 0.0;

    bool operator==(const DefectReport&) const = default;
};

struct EntropyParts {
    double total = 0.0;
    double plus = 0.0;
    double minus = 0.0;
};

/// s log s^2 with the continuous extension 0 at s = 0.
double u_log_u2(double s);
/// s^2 log s^2 with the continuous extension 0 at s = 0.
double u2_log_u2(double s);

EntropyParts entropy(const Field& u);
double mass(const Field& u);

EnergyBreakdown energy(const Field& u, double omega);

/// Strong-form residual -Delta_h u + omega u - u log u^2 at every node.
Field residual(const Field& u, double omega);
double residual_norm(const Field& u, double omega);

/// K + omega M - S; zero on the Nehari set. Throws DegenerateInput when M = 0.
double nehari_defect(const Field& u, double omega);
double nehari_defect(const EnergyBreakdown& e);

/// ((n-2)/n) K + (omega+1) M - S; zero on solutions. Throws DegenerateInput when M = 0.
double pohozaev_defect(const Field& u, double omega);
double pohozaev_defect(const EnergyBreakdown& e, int dim);

DefectReport defects(const Field& u, double omega);

/// Right side minus left side of the logarithmic Sobolev inequality
///   int u^2 log u^2 <= (a^2/pi) K + (log M - n(1 + log a)) M.
/// K comes from gradient_sq_norm_fourth_order: the inequality is an equality on
/// Gaussians, and a second-order K would bias the gap negative by O(h^2).
/// Throws DegenerateInput when M = 0 or a <= 0.
double log_sobolev_gap(const Field& u, double a);

/// The Young function of the space W: -s^2 log s^2 on [0, e^-3], 3s^2 + 4e^-3 s - e^-6 beyond.
double young_A(double s);
/// Its derivative.
double young_A_prime(double s);

struct LuxemburgResult {
    double gamma = 0.0;        // inf{gamma > 0 : int A(|u|/gamma) <= 1}
    double modular = 0.0;      // int A(|u|/gamma) at the returned gamma
    int iterations = 0;
};

/// Luxemburg-type part of the W norm, by bisection on gamma (relative tolerance 1e-10).
LuxemburgResult luxemburg_norm(const Field& u);

/// ||u||_{H^1} + Luxemburg part; 0 for u = 0.
double w_norm(const Field& u);

}  // namespace logson
