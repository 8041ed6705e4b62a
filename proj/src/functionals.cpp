#include "logson/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "logson/error.hpp"

namespace logson {

double u_log_u2(double s) { return s == 0.0 ? 0.0 : 2.0 * s * std::log(std::abs(s)); }

double u2_log_u2(double s) { return s == 0.0 ? 0.0 : 2.0 * s * s * std::log(std::abs(s)); }

EntropyParts entropy(const Field& u) {
    const auto w = u.grid->weights();
    EntropyParts out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double g = u2_log_u2(u.values[i]);
        if (g > 0.0)
            out.plus += w[i] * g;
        else
            out.minus -= w[i] * g;
    }
    out.total = out.plus - out.minus;
    return out;
}

double mass(const Field& u) { return inner(*u.grid, u.values, u.values); }

EnergyBreakdown energy(const Field& u, double omega) {
    EnergyBreakdown e;
    e.omega = omega;
    e.mass = mass(u);
    e.kinetic = gradient_sq_norm(u);
    const auto s = entropy(u);
    e.entropy = s.total;
    e.entropy_plus = s.plus;
    e.entropy_minus = s.minus;
    e.J_value = 0.5 * e.kinetic + 0.5 * (omega + 1.0) * e.mass - 0.5 * e.entropy;
    e.E_value = 0.5 * e.kinetic - 0.5 * e.entropy;
    return e;
}

Field residual(const Field& u, double omega) {
    const auto c = u.grid->conductances();
    const auto w = u.grid->weights();
    const auto& v = u.values;
    const std::size_t m = v.size();
    std::vector<double> r(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double left = i > 0 ? v[i - 1] : 0.0;
        const double right = i + 1 < m ? v[i + 1] : 0.0;
        const double flux_out = c[i + 1] * (right - v[i]);
        const double flux_in = c[i] * (v[i] - left);
        r[i] = -(flux_out - flux_in) / w[i] + omega * v[i] - u_log_u2(v[i]);
    }
    return Field(u.grid, std::move(r));
}

double residual_norm(const Field& u, double omega) {
    const Field r = residual(u, omega);
    return weighted_norm(*u.grid, r.values);
}

double nehari_defect(const EnergyBreakdown& e) {
    if (e.mass == 0.0) throw DegenerateInput("Nehari defect of the zero field");
    return e.kinetic + e.omega * e.mass - e.entropy;
}

double nehari_defect(const Field& u, double omega) { return nehari_defect(energy(u, omega)); }

double pohozaev_defect(const EnergyBreakdown& e, int dim) {
    if (e.mass == 0.0) throw DegenerateInput("Pohozaev defect of the zero field");
    const double n = dim;
    return (n - 2.0) / n * e.kinetic + (e.omega + 1.0) * e.mass - e.entropy;
}

double pohozaev_defect(const Field& u, double omega) { return pohozaev_defect(energy(u, omega), u.grid->dim()); }

DefectReport defects(const Field& u, double omega) {
    const auto e = energy(u, omega);
    DefectReport d;
    d.residual_norm = residual_norm(u, omega);
    d.nehari_defect = nehari_defect(e);
    d.pohozaev_defect = pohozaev_defect(e, u.grid->dim());
    return d;
}

double log_sobolev_gap(const Field& u, double a) {
    if (!(a > 0.0)) throw DegenerateInput("log-Sobolev parameter a must be positive");
    const double m = mass(u);
    if (m == 0.0) throw DegenerateInput("log-Sobolev gap of the zero field");
    const double n = u.grid->dim();
    const double k = gradient_sq_norm_fourth_order(u);
    const double rhs = a * a / std::numbers::pi * k + (std::log(m) - n * (1.0 + std::log(a))) * m;
    return rhs - entropy(u).total;
}

namespace {
const double kE3 = std::exp(-3.0);
const double kE6 = std::exp(-6.0);
}  // namespace

double young_A(double s) {
    s = std::abs(s);
    if (s <= kE3) return s == 0.0 ? 0.0 : -2.0 * s * s * std::log(s);
    return 3.0 * s * s + 4.0 * kE3 * s - kE6;
}

double young_A_prime(double s) {
    s = std::abs(s);
    if (s <= kE3) return s == 0.0 ? 0.0 : -2.0 * s * (2.0 * std::log(s) + 1.0);
    return 6.0 * s + 4.0 * kE3;
}

LuxemburgResult luxemburg_norm(const Field& u) {
    const auto w = u.grid->weights();
    double scale = 0.0;
    for (double x : u.values) scale = std::max(scale, std::abs(x));
    LuxemburgResult out;
    if (scale == 0.0) return out;

    auto modular = [&](double gamma) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * young_A(u.values[i] / gamma);
        return s;
    };

    double lo = 1e-12 * scale;
    double hi = scale;
    while (modular(hi) > 1.0) hi *= 2.0;
    while (modular(lo) <= 1.0 && lo > 1e-300) lo *= 1e-3;

    // gamma -> modular(gamma) is nonincreasing; bisect in log scale.
    while (hi / lo - 1.0 > 1e-10 && out.iterations < 400) {
        const double mid = std::sqrt(lo * hi);
        if (modular(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
        ++out.iterations;
    }
    out.gamma = hi;
    out.modular = modular(hi);
    return out;
}

double w_norm(const Field& u) {
    const double m = mass(u);
    if (m == 0.0) return 0.0;
    const double h1 = std::sqrt(m + gradient_sq_norm(u));
    return h1 + luxemburg_norm(u).gamma;
}

}  // namespace logson
