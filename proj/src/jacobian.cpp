#include "orthokin/jacobian.hpp"

#include <cmath>

namespace orthokin {

KinematicMatrices assemble_matrices(const CartesianPoint& p, const IkSolution& sol,
                                    const DesignParameters& params) {
    const Vec3 res = loop_closure_residual(p, sol.rho, params);
    if (res.max_abs() > params.tolerances.residual_eps)
        throw InconsistentConfigurationError(
            "point and joint coordinates violate loop closure");

    KinematicMatrices m;
    for (int i = 0; i < 3; ++i) {
        const Vec3 link = sol.legs[i].c - sol.legs[i].b;
        m.parallel_jacobian.rows[i] = link;
        m.eta[i] = link.dot(params.rail_axes[i]);
    }
    m.det_parallel = m.parallel_jacobian.determinant();
    m.det_serial = m.eta.x * m.eta.y * m.eta.z;

    const double L = params.leg_length;
    const double L3 = L * L * L;
    const double eps = params.tolerances.singular_det_eps;

    if (std::abs(m.det_parallel) / L3 > eps) {
        Mat3 j;
        if (solve3(m.parallel_jacobian, m.serial_jacobian(), j)) m.jacobian = j;
    }
    const double min_eta =
        std::min({std::abs(m.eta.x), std::abs(m.eta.y), std::abs(m.eta.z)});
    if (min_eta / L > eps) {
        Mat3 jinv;
        for (int i = 0; i < 3; ++i)
            jinv.rows[i] = m.parallel_jacobian.rows[i] / m.eta[i];
        m.jacobian_inverse = jinv;
    }
    return m;
}

SingularityReport classify_singularity(const KinematicMatrices& m,
                                       const DesignParameters& params) {
    const double L = params.leg_length;
    const double L3 = L * L * L;
    const double eps = params.tolerances.singular_det_eps;

    SingularityReport report;
    report.normalized_det_parallel = m.det_parallel / L3;
    report.normalized_det_serial = m.det_serial / L3;

    for (int i = 0; i < 3; ++i)
        if (std::abs(m.eta[i]) / L < eps) report.serial_legs.push_back(i + 1);

    const bool parallel = std::abs(report.normalized_det_parallel) < eps;
    const bool serial = !report.serial_legs.empty();
    report.kind = parallel && serial ? SingularityKind::Both
                  : parallel         ? SingularityKind::ParallelSingular
                  : serial           ? SingularityKind::SerialSingular
                                     : SingularityKind::Regular;
    return report;
}

Vec3 velocity_forward(const KinematicMatrices& m, const JointVector& rho_dot) {
    if (!m.jacobian)
        throw SingularityError(SingularityKind::ParallelSingular,
                               "velocity map undefined at a parallel singularity");
    return *m.jacobian * rho_dot;
}

JointVector velocity_inverse(const KinematicMatrices& m, const Vec3& p_dot) {
    if (!m.jacobian_inverse)
        throw SingularityError(SingularityKind::SerialSingular,
                               "joint rates undefined at a serial singularity");
    return JointVector(*m.jacobian_inverse * p_dot);
}

}  // namespace orthokin
