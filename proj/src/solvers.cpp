#include "logson/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "logson/error.hpp"

namespace logson {

namespace {

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(10);
    s << x;
    return s.str();
}

double extrapolated_center(const std::vector<double>& v) { return 1.5 * v[0] - 0.6 * v[1] + 0.1 * v[2]; }

// ---- shooting -------------------------------------------------------------

enum class Fate { Over, Under, Undecided };

struct Trajectory {
    Fate fate = Fate::Undecided;
    std::vector<double> values;  // at grid nodes, up to where integration stopped
    int crossings = 0;
};

const char* fate_name(Fate f) {
    switch (f) {
        case Fate::Over: return "over";
        case Fate::Under: return "under";
        default: return "undecided";
    }
}

struct Ode {
    double omega;
    double n;
    void rhs(double r, double u, double v, double& du, double& dv) const {
        du = v;
        dv = -(n - 1.0) / r * v + omega * u - u_log_u2(u);
    }
};

// Over: more than k sign changes. Under: |u| turns back up before reaching a further zero.
// The log nonlinearity keeps |u| bounded, so the 10*alpha guard is only a safeguard and
// counts as Under.
Trajectory integrate(double alpha, const Ode& ode, int k, double dr, int substeps, std::size_t nodes) {
    Trajectory t;
    t.values.reserve(nodes);
    const double c = ode.omega * alpha - alpha * std::log(alpha * alpha);
    double r = dr;
    double u = alpha + c * dr * dr / (2.0 * ode.n);
    double v = c * dr / ode.n;
    const long last = static_cast<long>(nodes) * substeps;
    if (substeps == 1) t.values.push_back(u);

    for (long j = 1; j < last; ++j) {
        double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
        ode.rhs(r, u, v, k1u, k1v);
        ode.rhs(r + 0.5 * dr, u + 0.5 * dr * k1u, v + 0.5 * dr * k1v, k2u, k2v);
        ode.rhs(r + 0.5 * dr, u + 0.5 * dr * k2u, v + 0.5 * dr * k2v, k3u, k3v);
        ode.rhs(r + dr, u + dr * k3u, v + dr * k3v, k4u, k4v);
        const double un = u + dr / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        const double vn = v + dr / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        r = static_cast<double>(j + 1) * dr;

        if (un * u < 0.0 || un == 0.0) ++t.crossings;
        if (t.crossings > k) {
            t.fate = Fate::Over;
            return t;
        }
        if ((un * u > 0.0 && un * vn > 0.0 && u * v < 0.0) || std::abs(un) > 10.0 * alpha || !std::isfinite(un)) {
            t.fate = Fate::Under;
            return t;
        }
        u = un;
        v = vn;
        if ((j + 1) % substeps == 0) t.values.push_back(u);
    }
    return t;
}

}  // namespace

void evaluate(SolveReport& report) {
    report.energy = energy(report.field, report.omega);
    report.defects.residual_norm = residual_norm(report.field, report.omega);
    if (report.energy.mass > 0.0) {
        report.defects.nehari_defect = nehari_defect(report.energy);
        report.defects.pohozaev_defect = pohozaev_defect(report.energy, report.field.grid->dim());
    }
    report.node_count = count_sign_changes(report.field.values);
}

SolveReport shoot(const ShootingConfig& config, GridPtr grid) {
    if (!grid) throw ValidationError("shoot: missing grid");
    if (config.node_target < 0) throw ValidationError("node_target must be >= 0");
    if (config.max_bisections <= 0) throw ValidationError("max_bisections must be positive");
    if (config.r_max != 0.0 && std::abs(config.r_max - grid->r_max()) > 1e-12 * grid->r_max())
        throw ValidationError("shooting r_max differs from the grid's");

    const double h = grid->step();
    int substeps = 1;
    if (config.ode_step != 0.0) {
        if (!(config.ode_step > 0.0) || config.ode_step > h * (1.0 + 1e-12))
            throw ValidationError("ode_step must be positive and at most the grid step");
        const double ratio = h / config.ode_step;
        substeps = static_cast<int>(std::lround(ratio));
        if (std::abs(ratio - substeps) > 1e-9 * ratio) throw ValidationError("ode_step must divide the grid step");
    }
    const double dr = h / substeps;

    const int k = config.node_target;
    const Ode ode{config.omega, static_cast<double>(grid->dim())};
    const double base = std::exp(0.5 * (config.omega + grid->dim()));
    double lo = config.alpha_lo > 0.0 ? config.alpha_lo : base;
    double hi = config.alpha_hi > 0.0 ? config.alpha_hi : base * std::exp(2.0 * (k + 1));
    if (!(lo < hi)) throw ValidationError("alpha bracket must satisfy lo < hi");

    auto run = [&](double alpha) { return integrate(alpha, ode, k, dr, substeps, grid->size()); };
    std::vector<std::string> history;
    auto log_try = [&](const char* side, double alpha, const Trajectory& t) {
        history.push_back(std::string(side) + " alpha=" + fmt(alpha) + " " + fate_name(t.fate) +
                          " crossings=" + std::to_string(t.crossings));
    };

    Trajectory tlo = run(lo);
    log_try("lo", lo, tlo);
    for (int widen = 0; widen < 8 && tlo.fate == Fate::Over; ++widen) {
        lo /= std::exp(1.0);
        tlo = run(lo);
        log_try("lo", lo, tlo);
    }
    Trajectory thi = run(hi);
    log_try("hi", hi, thi);
    for (int widen = 0; widen < 8 && thi.fate != Fate::Over; ++widen) {
        hi *= std::exp(1.0);
        thi = run(hi);
        log_try("hi", hi, thi);
    }
    if (tlo.fate == Fate::Over || thi.fate != Fate::Over)
        throw SolverError(SolverError::Kind::BracketFailure,
                          "shoot: no sign-change transition for node target " + std::to_string(k), history);

    int bisections = 0;
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (bisections >= config.max_bisections)
            throw SolverError(SolverError::Kind::NoConvergence,
                              "shoot: bracket not resolved after " + std::to_string(bisections) + " bisections",
                              {"lo=" + fmt(lo), "hi=" + fmt(hi)});
        Trajectory t = run(mid);
        ++bisections;
        if (t.fate == Fate::Over) {
            hi = mid;
            thi = std::move(t);
        } else {
            lo = mid;
            tlo = std::move(t);
        }
    }

    // Average the bracketing trajectories while they agree, then attach the Gaussian tail.
    const std::size_t m = grid->size();
    const std::size_t common = std::min(tlo.values.size(), thi.values.size());
    std::vector<double> u(m, 0.0);
    double running_max = 0.0;
    std::size_t cut = 0;
    for (; cut < common; ++cut) {
        const double a = tlo.values[cut], b = thi.values[cut];
        const double avg = 0.5 * (a + b);
        running_max = std::max(running_max, std::abs(avg));
        if (std::abs(a - b) > 1e-3 * std::max(std::abs(avg), 1e-6 * running_max)) break;
        u[cut] = avg;
    }
    if (cut < 3) throw SolverError(SolverError::Kind::NoConvergence, "shoot: bracketing trajectories never agree", history);
    const double rc = grid->node(cut - 1);
    const double uc = u[cut - 1];
    for (std::size_t i = cut; i < m; ++i) {
        const double r = grid->node(i);
        u[i] = uc * std::exp(-0.5 * (r * r - rc * rc));
    }

    SolveReport report = newton_refine(Field(grid, std::move(u)), config.omega);
    report.center_value = lo;
    report.notes.push_back("alpha*=" + fmt(lo) + " after " + std::to_string(bisections) + " bisections");
    report.notes.push_back("trajectories agree up to r=" + fmt(rc));
    if (report.node_count != k)
        throw SolverError(SolverError::Kind::NoConvergence,
                          "shoot: refined profile has " + std::to_string(report.node_count) + " sign changes, expected " +
                              std::to_string(k),
                          report.notes);
    return report;
}

// ---- Newton ---------------------------------------------------------------

SolveReport newton_refine(const Field& u0, double omega, const NewtonOptions& options) {
    if (!u0.grid) throw ValidationError("newton_refine: field without grid");
    const auto lap = radial_laplacian(u0.grid);
    const std::size_t m = u0.size();
    constexpr double kFloor = 1e-300;
    const double log_floor = 2.0 * std::log(kFloor);

    SolveReport report;
    report.omega = omega;
    std::vector<double> u = u0.values;
    TridiagonalMatrix jac = lap.weighted;
    SymmetricTridiagonal sym = lap.symmetric;

    double first = -1.0;
    for (int it = 0;; ++it) {
        Field cur(u0.grid, u);
        Field r = residual(cur, omega);
        const double rn = weighted_norm(*u0.grid, r.values);
        report.residual_history.push_back(rn);
        if (!std::isfinite(rn) || (first > 0.0 && rn > 1e8 * std::max(first, 1.0))) {
            std::vector<std::string> diag;
            for (double x : report.residual_history) diag.push_back(fmt(x));
            throw SolverError(SolverError::Kind::Divergence, "newton_refine: residual blew up", diag);
        }
        if (first < 0.0) first = rn;
        const double unorm = weighted_norm(*u0.grid, u);
        const bool small = rn <= options.tolerance * std::max(unorm, 1e-300);
        if (rn <= options.target) break;
        if (it > 0 && small && rn > 0.5 * report.residual_history[it - 1]) {
            report.notes.push_back("newton: stopped at round-off floor " + fmt(rn));
            break;
        }
        if (it >= options.max_iterations) break;

        int floored = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double lu;
            if (std::abs(u[i]) < kFloor) {
                lu = log_floor;
                ++floored;
            } else {
                lu = 2.0 * std::log(std::abs(u[i]));
            }
            const double shift = omega - lu - 2.0;
            jac.diag[i] = lap.weighted.diag[i] + shift;
            sym.diag[i] = lap.symmetric.diag[i] + shift;
        }
        report.floored_nodes = std::max(report.floored_nodes, floored);

        const std::size_t near_zero = sym.count_below(options.singular_window) - sym.count_below(-options.singular_window);
        if (near_zero > 0)
            throw SolverError(SolverError::Kind::SingularLinearization,
                              "newton_refine: linearization has " + std::to_string(near_zero) + " eigenvalue(s) within " +
                                  fmt(options.singular_window) + " of zero",
                              {"iteration=" + std::to_string(it), "residual=" + fmt(rn)});

        for (double& x : r.values) x = -x;
        const auto delta = jac.solve(r.values);
        for (std::size_t i = 0; i < m; ++i) u[i] += delta[i];
        report.iterations = it + 1;
    }

    report.field = Field(u0.grid, std::move(u));
    evaluate(report);
    report.center_value = extrapolated_center(report.field.values);
    const double unorm = weighted_norm(*u0.grid, report.field.values);
    report.converged = report.defects.residual_norm <= options.tolerance * unorm;
    if (report.floored_nodes > 0)
        report.notes.push_back("newton: " + std::to_string(report.floored_nodes) + " node(s) used the log floor");
    return report;
}

// ---- gradient flow on the L2 sphere ---------------------------------------

SolveReport gradient_flow_sphere(double nu, const Field& init, double omega_probe, const FlowOptions& options) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw DegenerateInput("gradient_flow_sphere: nu must be positive");
    if (!init.grid) throw ValidationError("gradient_flow_sphere: field without grid");
    const GridPtr grid = init.grid;
    const RadialGrid& g = *grid;
    const std::size_t m = init.size();
    const double m0 = inner(g, init.values, init.values);
    if (!(m0 > 0.0)) throw DegenerateInput("gradient_flow_sphere: zero initial field");

    const auto lap = radial_laplacian(grid);
    TridiagonalMatrix precond = lap.weighted;  // -Delta_h + I
    for (double& d : precond.diag) d += 1.0;

    auto E = [&](const std::vector<double>& v) {
        Field f(grid, v);
        return 0.5 * gradient_sq_norm(f) - 0.5 * entropy(f).total;
    };
    auto renormalize = [&](std::vector<double>& v) {
        const double s = std::sqrt(nu / inner(g, v, v));
        for (double& x : v) x *= s;
    };

    std::vector<double> u = init.values;
    renormalize(u);
    double e_old = E(u);

    SolveReport report;
    report.energy_history.push_back(e_old);
    bool converged = false;
    int it = 0;
    double gnorm = 0.0;
    for (; it < options.max_iterations; ++it) {
        // Gradient of E: -Delta u - u log u^2 - u.
        auto grad = lap.apply(u);
        for (std::size_t i = 0; i < m; ++i) grad[i] -= u_log_u2(u[i]) + u[i];
        const double proj = inner(g, grad, u) / nu;
        double gsq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double t = grad[i] - proj * u[i];
            gsq += g.weight(i) * t * t;
        }
        gnorm = std::sqrt(gsq / nu);

        // Sobolev direction, projected onto the tangent space in the preconditioner metric.
        auto d = precond.solve(grad);
        const auto pu = precond.solve(u);
        const double coef = inner(g, d, u) / inner(g, pu, u);
        for (std::size_t i = 0; i < m; ++i) d[i] -= coef * pu[i];

        double tau = options.initial_step;
        std::vector<double> trial(m);
        double e_new;
        for (;;) {
            for (std::size_t i = 0; i < m; ++i) trial[i] = u[i] - tau * d[i];
            renormalize(trial);
            e_new = E(trial);
            if (e_new <= e_old + 1e-12) break;
            tau *= 0.5;
            if (tau < options.min_step)
                throw SolverError(SolverError::Kind::StepCollapse, "gradient_flow_sphere: step size collapsed",
                                  {"iteration=" + std::to_string(it), "E=" + fmt(e_old), "gradient=" + fmt(gnorm)});
        }
        const double de = e_old - e_new;
        u.swap(trial);
        e_old = e_new;
        report.energy_history.push_back(e_new);
        if (std::abs(de) < options.energy_tol * std::max(1.0, std::abs(e_new)) && gnorm < options.gradient_tol) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged)
        throw SolverError(SolverError::Kind::NoConvergence,
                          "gradient_flow_sphere: no convergence in " + std::to_string(options.max_iterations) + " iterations",
                          {"E=" + fmt(e_old), "gradient=" + fmt(gnorm)});

    report.field = Field(grid, std::move(u));
    const Field& f = report.field;
    report.omega = (entropy(f).total - gradient_sq_norm(f)) / nu;
    report.iterations = it;
    report.converged = true;
    evaluate(report);
    report.center_value = extrapolated_center(report.field.values);
    report.notes.push_back("multiplier=" + fmt(report.omega) + " probe=" + fmt(omega_probe) +
                           " deviation=" + fmt(report.omega - omega_probe));
    report.notes.push_back("tangential gradient=" + fmt(gnorm));
    return report;
}

// ---- Nehari projection ----------------------------------------------------

NehariProjection nehari_project(const Field& u, double omega) {
    const auto e = energy(u, omega);
    if (e.mass == 0.0) throw DegenerateInput("nehari_project: zero field");
    const double log_t2 = nehari_defect(e) / e.mass;
    const double t = std::exp(0.5 * log_t2);
    return {u.scaled(t), t};
}

}  // namespace logson
