#include "orthokin/performance.hpp"

#include <cmath>
#include <limits>

namespace orthokin {

std::array<double, 3> singular_values_3x3(const Mat3& m) {
    const Mat3 mmt = m * m.transposed();
    auto ev = sym_eigenvalues3(mmt);
    std::array<double, 3> sv;
    for (int i = 0; i < 3; ++i) sv[i] = std::sqrt(std::max(ev[i], 0.0));
    return sv;
}

double condition_number(const Mat3& m) {
    const auto sv = singular_values_3x3(m);
    // below ~sqrt(machine epsilon) relative, the M M^T route cannot separate
    // the smallest singular value from zero
    if (sv[0] == 0.0 || sv[2] <= sv[0] * 1e-8)
        throw InfiniteConditionError("smallest singular value vanishes");
    return std::sqrt(sv[0] / sv[2]);
}

namespace {

void require_regular(const KinematicMatrices& m) {
    if (!m.jacobian)
        throw SingularityError(SingularityKind::ParallelSingular,
                               "performance metrics undefined at a parallel singularity");
    if (!m.jacobian_inverse)
        throw SingularityError(SingularityKind::SerialSingular,
                               "performance metrics undefined at a serial singularity");
}

}  // namespace

PerformancePoint manipulability(const KinematicMatrices& m) {
    require_regular(m);

    PerformancePoint out;
    out.singular_values = singular_values_3x3(*m.jacobian);
    out.kappa = condition_number(*m.jacobian);

    // (J J^T)^-1 = J^-T J^-1; its eigenvalues are xi_k^2
    const Mat3 jinv = *m.jacobian_inverse;
    const SymEigen3 eig = sym_eigen3(jinv.transposed() * jinv);
    for (int k = 0; k < 3; ++k) {
        // eig.values descend, so reverse to list xi ascending
        const int src = 2 - k;
        const double xi = std::sqrt(std::max(eig.values[src], 0.0));
        out.ellipsoid_axes[k] = xi;
        out.force_factors[k] = xi;
        out.psi[k] = 1.0 / xi;
        out.ellipsoid_directions.set_col(k, eig.vectors.col(src));
    }
    out.within_bounds = true;
    for (double psi : out.psi)
        out.within_bounds =
            out.within_bounds && psi >= kPsiLowerBound && psi <= kPsiUpperBound;
    return out;
}

double ellipsoid_membership(const KinematicMatrices& m, const Vec3& p_dot) {
    require_regular(m);
    return (*m.jacobian_inverse * p_dot).norm_squared();
}

IsotropyResidual isotropy_residual(const IkSolution& sol, const KinematicMatrices& m,
                                   const DesignParameters& params) {
    IsotropyResidual res;
    const double L2 = params.leg_length * params.leg_length;
    for (int i = 0; i < 3; ++i) {
        const Vec3 link = sol.legs[i].c - sol.legs[i].b;
        const double abs_eta = std::abs(m.eta[i]);
        res.norm_ratio[i] = abs_eta > 0.0
                                ? std::abs(link.norm() / abs_eta - 1.0)
                                : std::numeric_limits<double>::infinity();
        const int j = (i + 1) % 3;
        const Vec3 next = sol.legs[j].c - sol.legs[j].b;
        res.orthogonality[i] = std::abs(link.dot(next)) / L2;
    }
    return res;
}

}  // namespace orthokin
