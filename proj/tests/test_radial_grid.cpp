#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logson/error.hpp"
#include "logson/radial_grid.hpp"
#include "oracles.hpp"

using namespace logson;

namespace {

constexpr double kPi = std::numbers::pi;

GridPtr grid3(std::size_t m = 1199) { return std::make_shared<const RadialGrid>(3, 12.0, m); }
std::size_t refined(std::size_t m) { return 2 * (m + 1) - 1; }

Field gaussian(GridPtr g, double beta = 1.0) {
    return Field::sample(std::move(g), [beta](double r) { return std::exp(-beta * r * r); });
}

}  // namespace

TEST_CASE("grid construction and validation") {
    const auto g = grid3();
    CHECK(g->size() == 1199);
    CHECK(g->step() == doctest::Approx(0.01));
    CHECK(g->node(0) == doctest::Approx(0.01));
    CHECK(g->node(1198) < g->r_max());
    CHECK(g->sphere_area() == doctest::Approx(4.0 * kPi));
    CHECK(RadialGrid(4, 1.0, 16).sphere_area() == doctest::Approx(2.0 * kPi * kPi));
    CHECK(RadialGrid::with_step(3, 12.0, 0.01)->size() == 1199);

    CHECK_THROWS_AS(RadialGrid(2, 12.0, 100), ValidationError);
    CHECK_THROWS_AS(RadialGrid(3, 0.0, 100), ValidationError);
    CHECK_THROWS_AS(RadialGrid(3, 12.0, 15), ValidationError);
    CHECK_THROWS_AS(RadialGrid::with_step(3, 12.0, 0.0), ValidationError);
    CHECK_THROWS_AS(RadialGrid::with_step(3, 12.0, 1.0), ValidationError);
    CHECK_THROWS_AS(Field(g, std::vector<double>(3)), std::invalid_argument);
}

TEST_CASE("integrate reproduces Gaussian moments") {
    const auto g = grid3();
    CHECK(integrate(Field::zeros(g)) == 0.0);
    const double m0 = oracle::gaussian_moment(3, 0, 1.0);
    const double m1 = oracle::gaussian_moment(3, 1, 1.0);
    CHECK(m0 == doctest::Approx(5.568328).epsilon(1e-6));
    CHECK(m1 == doctest::Approx(8.352492).epsilon(1e-6));
    CHECK(integrate(gaussian(g)) == doctest::Approx(m0).epsilon(1e-6));
    const Field f = Field::sample(g, [](double r) { return r * r * std::exp(-r * r); });
    CHECK(integrate(f) == doctest::Approx(m1).epsilon(1e-6));
}

TEST_CASE("ball volume converges at second order") {
    // Trapezoid for the ball of radius 2; r_max is not a node, so its half weight is added here.
    double prev = 0.0;
    for (std::size_t m : {99ul, 199ul, 399ul}) {
        RadialGrid g(3, 2.0, m);
        double s = 0.5 * g.sphere_area() * 4.0 * g.step();
        for (double w : g.weights()) s += w;
        const double err = std::abs(s - 4.0 * kPi * 8.0 / 3.0);
        if (prev > 0.0) CHECK(prev / err > 3.5);
        prev = err;
    }
}

TEST_CASE("gradient norm of the unit Gausson") {
    const auto g = grid3();
    const Field u = gaussian(g, 0.5);
    const double exact = oracle::gaussian_moment(3, 1, 1.0);  // |grad u|^2 = r^2 e^{-r^2}
    CHECK(gradient_sq_norm(Field::zeros(g)) == 0.0);
    CHECK(gradient_sq_norm(u) == doctest::Approx(exact).epsilon(1e-4));

    const double e1 = std::abs(gradient_sq_norm(u) - exact);
    const double e2 = std::abs(gradient_sq_norm(gaussian(grid3(refined(1199)), 0.5)) - exact);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("fourth-order gradient norm") {
    const double exact = oracle::gaussian_moment(3, 1, 1.0);
    const double e1 = std::abs(gradient_sq_norm_fourth_order(gaussian(grid3(299), 0.5)) - exact);
    const double e2 = std::abs(gradient_sq_norm_fourth_order(gaussian(grid3(refined(299)), 0.5)) - exact);
    CHECK(e1 / e2 > 12.0);
    CHECK(gradient_sq_norm_fourth_order(gaussian(grid3(), 0.5)) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("flux form equals the quadratic form of the Laplacian") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (int dim : {3, 4, 5}) {
        auto g = std::make_shared<const RadialGrid>(dim, 6.0, 200);
        std::vector<double> u(200), v(200);
        for (std::size_t i = 0; i < 200; ++i) {
            u[i] = nd(rng);
            v[i] = nd(rng);
        }
        const auto lap = radial_laplacian(g);
        const auto au = lap.apply(u), av = lap.apply(v);
        const double uav = inner(*g, u, av), vau = inner(*g, v, au);
        CHECK(uav == doctest::Approx(vau).epsilon(1e-12));
        CHECK(inner(*g, u, au) == doctest::Approx(gradient_sq_norm(Field(g, u))).epsilon(1e-12));
    }
}

TEST_CASE("Laplacian is exact on constants and r^2 away from r_max") {
    for (int dim : {3, 4, 6}) {
        auto g = std::make_shared<const RadialGrid>(dim, 4.0, 99);
        const auto lap = radial_laplacian(g);
        const auto one = lap.apply(std::vector<double>(99, 1.0));
        const Field r2 = Field::sample(g, [](double r) { return r * r; });
        const auto lr2 = lap.apply(r2.values);
        for (std::size_t i = 0; i + 1 < 99; ++i) {
            CHECK(std::abs(one[i]) < 1e-9);
            CHECK(lr2[i] == doctest::Approx(-2.0 * dim).epsilon(1e-10));
        }
    }
}

TEST_CASE("Laplacian of the Gaussian, second-order pointwise") {
    auto max_err = [](std::size_t m) {
        const auto g = grid3(m);
        const auto lu = radial_laplacian(g).apply(gaussian(g, 0.5).values);
        double e = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = g->node(i);
            if (r > 8.0) break;
            e = std::max(e, std::abs(lu[i] - (3.0 - r * r) * std::exp(-0.5 * r * r)));
        }
        return e;
    };
    const double e1 = max_err(599), e2 = max_err(refined(599));
    CHECK(e1 < 1e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("harmonic oscillator ground energy equals n") {
    for (int dim : {3, 4}) {
        auto g = std::make_shared<const RadialGrid>(dim, 12.0, 1199);
        auto sym = radial_laplacian(g).symmetric;
        for (std::size_t i = 0; i < g->size(); ++i) sym.diag[i] += g->node(i) * g->node(i);
        CHECK(lowest_eigenvalues(sym, 1)[0] == doctest::Approx(dim).epsilon(1e-2 / dim));
        CHECK(sym.count_below(0.0) == 0);
    }
}

TEST_CASE("Liouville form round trip") {
    const auto g = grid3(99);
    const auto lap = radial_laplacian(g);
    const Field u = gaussian(g);
    const auto v = lap.to_liouville(u.values);
    const auto back = lap.from_liouville(v);
    for (std::size_t i = 0; i < 99; ++i) CHECK(back[i] == doctest::Approx(u.values[i]));
    const auto sv = lap.from_liouville(lap.symmetric.apply(v));
    const auto au = lap.apply(u.values);
    for (std::size_t i = 0; i < 99; ++i) CHECK(sv[i] == doctest::Approx(au[i]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("sign changes") {
    const std::vector<double> v{1.0, 0.5, -0.2, -1.0, 0.0, 2.0, 1e-14, -1e-14, 3.0};
    CHECK(count_sign_changes(v) == 2);
    CHECK(count_sign_changes(std::vector<double>(5, 0.0)) == 0);
}
