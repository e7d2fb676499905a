#pragma once

#include <array>

#include "orthokin/math.hpp"

namespace orthokin {

// Eigendecomposition of a symmetric 3x3 matrix. values are sorted descending;
// vectors holds the matching unit eigenvectors as columns (orthonormal, also
// for repeated eigenvalues).
struct SymEigen3 {
    std::array<double, 3> values{};
    Mat3 vectors;
};

// Analytic solution of the characteristic cubic (trigonometric form, with the
// acos argument clamped to [-1,1] and the input scaled to unit magnitude).
// Only the symmetric part of the input participates.
SymEigen3 sym_eigen3(const Mat3& m);

// Eigenvalues only, descending.
std::array<double, 3> sym_eigenvalues3(const Mat3& m);

}  // namespace orthokin
