#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "ncab/vec3.hpp"

namespace ncab::testing {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double rel_err(const Vec3& got, const Vec3& want) {
    return norm(got - want) / std::max(norm(want), 1e-300);
}

/// Fixed-seed generator so every run sees the same "random" points.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611u);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Vec3 random_vec(double lo = -10.0, double hi = 10.0) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

/// Point outside a solenoid of radius a, with rho in (1.2a, 12a) and |z| < 5.
inline Vec3 random_exterior(double a) {
    const double rho = uniform(1.2 * a, 12.0 * a);
    const double phi = uniform(0.0, 2.0 * 3.141592653589793);
    return {rho * std::cos(phi), rho * std::sin(phi), uniform(-5.0, 5.0)};
}

} // namespace ncab::testing
