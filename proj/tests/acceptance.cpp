// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "logson/functionals.hpp"
#include "logson/gausson.hpp"
#include "logson/sampling.hpp"
#include "logson/solvers.hpp"
#include "logson/spectral.hpp"

using namespace logson;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " FAILED(" << what << ")";
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<void(Outcome&)>& body) {
    Outcome o;
    o.detail.precision(6);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.passed = false;
        o.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < time_limit, "runtime");
    if (!o.passed) ++failures;
    std::printf("[%s] %2d %s:%s (%.2fs, limit %.0fs)\n", o.passed ? "PASS" : "FAIL", id, name, o.detail.str().c_str(),
                secs, time_limit);
    std::fflush(stdout);
}

GridPtr grid(double step = 0.01, int dim = 3) { return RadialGrid::with_step(dim, 12.0, step); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

SolveReport ground(double omega) {
    ShootingConfig c;
    c.omega = omega;
    return shoot(c, grid());
}

}  // namespace

int main() {
    criterion(1, "Gausson residual", 3.0, [](Outcome& o) {
        for (double omega : {-3.0, 0.0, 1.0}) {
            const double r1 = residual_norm(gausson_field(grid(0.01), omega), omega);
            const double r2 = residual_norm(gausson_field(grid(0.005), omega), omega);
            const double ratio = r1 / r2;
            o.detail << " omega=" << omega << " res=" << r1 << " ratio=" << ratio;
            o.require(r1 <= 1e-3, "residual <= 1e-3 at omega=" + std::to_string(omega));
            o.require(ratio >= 3.5 && ratio <= 4.5, "refinement ratio in [3.5, 4.5]");
        }
    });

    criterion(2, "Closed-form invariants", 1.0, [](Outcome& o) {
        double worst = 0.0;
        for (double omega : {-3.0, 0.0, 1.0}) {
            const auto e = energy(gausson_field(grid(), omega), omega);
            const double scale = std::exp(omega + 3.0) * std::pow(kPi, 1.5);
            worst = std::max({worst, rel(e.mass, scale), rel(e.kinetic, 1.5 * scale), rel(e.entropy, (omega + 1.5) * scale)});
        }
        o.detail << " max relative error=" << worst;
        o.require(worst <= 1e-4, "relative error <= 1e-4");
    });

    criterion(3, "Repartition", 10.0, [](Outcome& o) {
        const auto s = ground(1.0);
        const double J = s.energy.J_value;
        const double em = rel(s.energy.mass, 2.0 * J), ek = rel(s.energy.kinetic, 3.0 * J),
                     es = rel(s.energy.entropy, 5.0 * J);
        o.detail << " mass/2J-1=" << em << " kinetic/3J-1=" << ek << " entropy/5J-1=" << es;
        o.require(s.converged, "converged");
        o.require(std::max({em, ek, es}) <= 1e-3, "within 1e-3");
    });

    criterion(4, "Uniqueness echo", 10.0, [](Outcome& o) {
        const auto s = ground(0.0);
        const Field g = gausson_field(s.field.grid, 0.0);
        double diff = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) diff = std::max(diff, std::abs(s.field[i] - g[i]));
        const double ra = rel(s.center_value, std::exp(1.5));
        o.detail << " alpha*=" << s.center_value << " rel=" << ra << " max|u-g|=" << diff;
        o.require(ra <= 1e-3, "alpha* within 1e-3");
        o.require(diff <= 1e-3, "profile within 1e-3");
    });

    criterion(5, "Multiplicity witness", 60.0, [](Outcome& o) {
        double prev = -INFINITY;
        for (int k = 0; k <= 3; ++k) {
            ShootingConfig c;
            c.omega = 0.0;
            c.node_target = k;
            const auto s = shoot(c, grid());
            o.detail << " J" << k << "=" << s.energy.J_value;
            o.require(s.converged && s.node_count == k, "branch " + std::to_string(k) + " converged");
            o.require(s.energy.J_value > prev, "J strictly increasing");
            prev = s.energy.J_value;
        }
    });

    criterion(6, "Nondegeneracy", 30.0, [](Outcome& o) {
        const auto g = grid();
        const auto rep = certify_nondegeneracy(g, 4, default_zero_tol(*g));
        const double a0 = rep.sectors[0].values[0], a1 = rep.sectors[1].values[0];
        const double a2 = rep.sectors[2].values[0], a3 = rep.sectors[3].values[0];
        const Field dg = Field::sample(g, [](double r) { return -r * std::exp(-0.5 * r * r); });
        const double cos1 = cosine_similarity(*g, rep.sectors[1].vectors[0], dg.values);
        o.detail << " verdict=" << rep.nondegenerate << " A0=" << a0 << " A1=" << a1 << " cos=" << cos1 << " A2=" << a2
                 << " A3=" << a3;
        o.require(rep.nondegenerate, "verdict");
        o.require(std::abs(a0 + 2.0) <= 1e-2, "A0");
        o.require(std::abs(a1) <= 1e-3, "A1");
        o.require(cos1 >= 0.999, "A1 eigenvector");
        o.require(a2 >= 1.9 && a3 >= 1.9, "A2, A3");
    });

    criterion(7, "Log-Sobolev", 30.0, [](Outcome& o) {
        const auto g = grid();
        double gauss_gap = -INFINITY;
        for (double omega : {-3.0, 0.0, 1.0}) gauss_gap = std::max(gauss_gap, log_sobolev_gap(gausson_field(g, omega), std::sqrt(kPi)));
        double worst = INFINITY;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Field u = random_smooth_field(g, seed);
            for (double a : {0.25, 0.5, 1.0, std::sqrt(kPi), 2.0, 3.0}) worst = std::min(worst, log_sobolev_gap(u, a));
        }
        o.detail << " Gausson gap=" << gauss_gap << " min random gap=" << worst;
        o.require(gauss_gap <= 1e-6, "Gausson gap <= 1e-6");
        o.require(worst >= -1e-8, "random gaps >= -1e-8");
    });

    criterion(8, "Sphere/Nehari correspondence", 60.0, [](Outcome& o) {
        const double omega = 1.0;
        const double nu = std::exp(omega + 3.0) * std::pow(kPi, 1.5);
        const Field init = Field::sample(grid(), [](double r) { return std::exp(-0.25 * r * r); });
        const auto s = gradient_flow_sphere(nu, init, omega);
        const double c = s.energy.E_value;
        const double m = s.energy.J_value;
        const double c_map = 0.5 * nu * (std::log(2.0 * m / nu) - s.omega);
        const double e1 = rel(c, -omega * nu / 2.0), e2 = rel(c, c_map);
        o.detail << " E=" << c << " rel=" << e1 << " omega_hat=" << s.omega << " mappatura rel=" << e2;
        o.require(e1 <= 1e-3, "E within 1e-3");
        o.require(e2 <= 1e-4, "mappatura within 1e-4");
    });

    criterion(9, "Scaling covariance", 5.0, [](Outcome& o) {
        const auto s = ground(1.0);
        const double base = s.defects.residual_norm;
        o.detail << " base=" << base;
        for (double lambda : {std::exp(0.5), 2.0, -1.0}) {
            const auto [v, w] = scale_solution(s.field, lambda, s.omega);
            const double ratio = residual_norm(v, w) / base;
            o.detail << " ratio(" << lambda << ")=" << ratio;
            o.require(ratio <= 2.0, "ratio <= 2 at lambda=" + std::to_string(lambda));
        }
    });

    criterion(10, "Nehari projection", 5.0, [](Outcome& o) {
        const auto g = grid();
        double worst_defect = 0.0, worst_idem = 0.0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const Field u = random_smooth_field(g, 5000 + seed);
            const auto p = nehari_project(u, 1.0);
            const auto q = nehari_project(p.field, 1.0);
            worst_defect = std::max(worst_defect, std::abs(nehari_defect(p.field, 1.0)));
            double d = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < g->size(); ++i) {
                d = std::max(d, std::abs(q.field[i] - p.field[i]));
                scale = std::max(scale, std::abs(p.field[i]));
            }
            worst_idem = std::max({worst_idem, d / scale, std::abs(q.t - 1.0)});
        }
        const auto s = ground(1.0);
        const double t = nehari_project(s.field.scaled(2.0), 1.0).t;
        o.detail << " max defect=" << worst_defect << " idempotence=" << worst_idem << " |t-1/2|=" << std::abs(t - 0.5);
        o.require(worst_defect <= 1e-10, "defect <= 1e-10");
        o.require(worst_idem <= 1e-10, "idempotent");
        o.require(std::abs(t - 0.5) <= 1e-10, "t = 1/2");
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
