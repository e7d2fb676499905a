#pragma once

#include <random>

#include "orthokin/math.hpp"

namespace orthokin::testutil {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Rejection sampling from the bounding cube; deterministic for a fixed seed.
inline Vec3 point_in_ball(Rng& rng, double radius) {
    for (;;) {
        Vec3 p{uniform(rng, -radius, radius), uniform(rng, -radius, radius),
               uniform(rng, -radius, radius)};
        if (p.norm_squared() <= radius * radius) return p;
    }
}

inline Vec3 unit_vector(Rng& rng) {
    for (;;) {
        Vec3 p = point_in_ball(rng, 1.0);
        const double n = p.norm();
        if (n > 1e-3) return p / n;
    }
}

inline Mat3 random_matrix(Rng& rng, double scale = 1.0) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = uniform(rng, -scale, scale);
    return m;
}

inline Mat3 random_symmetric(Rng& rng, double scale = 1.0) {
    Mat3 m = random_matrix(rng, scale);
    Mat3 s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
    return s;
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
    return (a - b).max_abs();
}

}  // namespace orthokin::testutil
