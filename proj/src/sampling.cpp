#include "logson/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace logson {

Field random_smooth_field(GridPtr grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double radius = 2.0 + 4.0 * unit(rng);
    const double amplitude = 0.2 * std::pow(25.0, unit(rng));
    double b[3];
    for (double& x : b) x = unit(rng) - 0.5;
    const double R = std::min(radius, 0.9 * grid->r_max());
    return Field::sample(std::move(grid), [=](double r) {
        if (r >= R) return 0.0;
        const double s = 1.0 - (r / R) * (r / R);
        double osc = 1.0;
        for (int j = 0; j < 3; ++j) osc += b[j] * std::cos((j + 1) * std::numbers::pi * r / R);
        return amplitude * s * s * s * s * osc;
    });
}

}  // namespace logson
