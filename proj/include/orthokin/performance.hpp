#pragma once

#include <array>

#include "orthokin/jacobian.hpp"
#include "orthokin/sym_eigen.hpp"

namespace orthokin {

// Bounds imposed on the velocity amplification factors over the workspace.
inline constexpr double kPsiLowerBound = 1.0 / 3.0;
inline constexpr double kPsiUpperBound = 3.0;

// Local kinematic performance at a regular configuration.
//
// The joint-rate unit ball maps to the ellipsoid p_dot^T (J J^T)^-1 p_dot <= 1
// whose principal semi-axis lengths are the ellipsoid_axes xi_k (ascending,
// with unit directions in the columns of ellipsoid_directions). The velocity
// amplification factors psi_k = 1/xi_k (descending) coincide with the
// singular values of J; the force amplification factors are phi_k = xi_k, so
// psi_k * phi_k = 1 on each principal axis.
struct PerformancePoint {
    std::array<double, 3> singular_values{};  // of J, descending
    double kappa = 0.0;                       // sqrt(sigma_1 / sigma_3)
    std::array<double, 3> ellipsoid_axes{};   // xi, ascending
    Mat3 ellipsoid_directions;                // columns match xi/psi index k
    std::array<double, 3> psi{};              // descending
    std::array<double, 3> force_factors{};    // = xi
    bool within_bounds = false;               // all psi in [1/3, 3]
};

// Residuals of the isotropy conditions: the link/rail alignment ratios
// |carrier ratio - 1| per leg, and the pairwise link orthogonality
// |(c_i-b_i).(c_j-b_j)| / L^2 for (1,2), (2,3), (3,1). All vanish exactly at
// the isotropic configuration.
struct IsotropyResidual {
    std::array<double, 3> norm_ratio{};
    std::array<double, 3> orthogonality{};
    double max() const {
        double m = 0.0;
        for (double v : norm_ratio) m = std::max(m, v);
        for (double v : orthogonality) m = std::max(m, v);
        return m;
    }
};

// Singular values (descending): square roots of the eigenvalues of M M^T.
std::array<double, 3> singular_values_3x3(const Mat3& m);

// kappa(M) = sqrt(sigma_max / sigma_min). Throws InfiniteConditionError when
// the smallest singular value vanishes at double precision.
double condition_number(const Mat3& m);

// Full manipulability data; requires both J and J^-1 (regular configuration).
PerformancePoint manipulability(const KinematicMatrices& m);

// Quadratic form p_dot^T (J J^T)^-1 p_dot, computed as ||J^-1 p_dot||^2.
// Values <= 1 are reachable with joint rates in the unit ball.
double ellipsoid_membership(const KinematicMatrices& m, const Vec3& p_dot);

// Residuals of the isotropy conditions at the given configuration.
IsotropyResidual isotropy_residual(const IkSolution& sol, const KinematicMatrices& m,
                                   const DesignParameters& params);

}  // namespace orthokin
