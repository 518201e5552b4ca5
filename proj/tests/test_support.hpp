#pragma once

// Random generators and independent oracles shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "lamconvex/core.hpp"

namespace lamconvex::testing {

inline constexpr double kPi = std::numbers::pi;

/// Random partition of [-1, 1] into `plies` intervals, each at least `min_width` wide.
inline std::vector<double> random_partition(std::mt19937_64& rng, std::size_t plies,
                                            double min_width = 1e-3) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(plies);
    double total = 0.0;
    for (auto& x : w) {
        x = u(rng) + 0.05;
        total += x;
    }
    const double spare = 2.0 - min_width * static_cast<double>(plies);
    std::vector<double> bps{-1.0};
    for (std::size_t i = 0; i + 1 < plies; ++i) {
        bps.push_back(bps.back() + min_width + spare * w[i] / total);
    }
    bps.push_back(1.0);
    return bps;
}

inline StepLaminate random_laminate(std::mt19937_64& rng, std::size_t max_plies,
                                    double angle_lo = -kPi, double angle_hi = kPi) {
    std::uniform_int_distribution<std::size_t> np(1, max_plies);
    std::uniform_real_distribution<double> ang(angle_lo, angle_hi);
    const std::size_t plies = np(rng);
    std::vector<double> angles(plies);
    for (auto& a : angles) a = ang(rng);
    return {random_partition(rng, plies), std::move(angles)};
}

/// A point of (-1, 1) at least 1e-9 away from every breakpoint of t.
inline double random_interior_point(std::mt19937_64& rng, const StepLaminate& t) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const double z = u(rng);
        const bool clear = std::ranges::none_of(
            t.breakpoints(), [z](double b) { return std::abs(b - z) < 1e-9; });
        if (clear) return z;
    }
}

/// Composite midpoint rule for int_A^B z^j dz.
inline double midpoint_moment(double A, double B, int j, std::size_t samples) {
    const double h = (B - A) / static_cast<double>(samples);
    double acc = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double z = A + (static_cast<double>(k) + 0.5) * h;
        acc += std::pow(z, j);
    }
    return acc * h;
}

}  // namespace lamconvex::testing
