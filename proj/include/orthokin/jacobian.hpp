#pragma once

#include <optional>
#include <vector>

#include "orthokin/errors.hpp"
#include "orthokin/kinematics.hpp"

namespace orthokin {

// Velocity-level matrices at one configuration. The loop closure projects to
// A p_dot = B rho_dot with A rows (c_i - b_i)^T and B = diag(eta_i),
// eta_i = (c_i - b_i)^T e_i.
//
// jacobian (p_dot = J rho_dot) is present only when A is invertible beyond
// the singularity threshold; jacobian_inverse (rho_dot = J^-1 p_dot) only
// when every |eta_i| is. Absent optionals mark the matrix as undefined at the
// configuration rather than carrying fabricated values.
struct KinematicMatrices {
    Mat3 parallel_jacobian;                 // A, units m
    Vec3 eta;                               // diagonal of B, units m
    double det_parallel = 0.0;              // det A, m^3
    double det_serial = 0.0;                // det B = eta1*eta2*eta3, m^3
    std::optional<Mat3> jacobian;           // J = A^-1 B, dimensionless
    std::optional<Mat3> jacobian_inverse;   // J^-1 = B^-1 A, dimensionless

    Mat3 serial_jacobian() const { return Mat3::diagonal(eta); }
};

struct SingularityReport {
    SingularityKind kind = SingularityKind::Regular;
    std::vector<int> serial_legs;       // 1-based legs with vanishing eta
    double normalized_det_parallel = 0; // det A / L^3
    double normalized_det_serial = 0;   // det B / L^3
};

// Builds the matrices from a consistent (p, solution) pair. J is obtained by
// solving A J = B column-wise rather than inverting A. Throws
// InconsistentConfigurationError when the loop-closure residuals exceed
// tolerance.
KinematicMatrices assemble_matrices(const CartesianPoint& p, const IkSolution& sol,
                                    const DesignParameters& params);

// Thresholds |det A|/L^3 and each |eta_i|/L against singular_det_eps.
SingularityReport classify_singularity(const KinematicMatrices& m,
                                       const DesignParameters& params);

// p_dot = J rho_dot. Throws SingularityError at parallel singularities.
Vec3 velocity_forward(const KinematicMatrices& m, const JointVector& rho_dot);

// rho_dot = J^-1 p_dot. Throws SingularityError at serial singularities.
JointVector velocity_inverse(const KinematicMatrices& m, const Vec3& p_dot);

}  // namespace orthokin
