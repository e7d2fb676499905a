#pragma once

#include <array>
#include <optional>

#include "orthokin/model.hpp"

namespace orthokin {

// Position-level solution for one tool point. boundary_flags[i] is set when
// the square-root term of leg i vanishes within tolerance (the point sits on
// that leg's reach boundary, which is also its serial-singularity surface).
struct IkSolution {
    JointVector rho;
    std::array<LegState, 3> legs{};
    std::array<bool, 3> boundary_flags{};
};

// Non-throwing inverse kinematics. Returns nullopt when some leg cannot reach
// p; the failing leg (1-based, first in order) is stored in *unreachable_leg
// when provided.
std::optional<IkSolution> try_inverse_kinematics(const CartesianPoint& p,
                                                 const DesignParameters& params,
                                                 int* unreachable_leg = nullptr);

// rho_i = (p - a_i).e_i + s_i * sqrt(L^2 - r_i^2), with r_i the distance of
// p - a_i from rail axis i. Throws UnreachableError when r_i > L.
IkSolution inverse_kinematics(const CartesianPoint& p, const DesignParameters& params);

struct FkInfo {
    bool degenerate = false;   // both assembly modes reproduce rho
    bool used_newton = false;  // closed form was not applicable
};

// Intersects the three leg spheres and returns the point whose inverse
// kinematics reproduces rho under the design's branch signs. Closed form for
// canonical-style designs with all |rho_i| above tolerance; damped Newton on
// the loop-closure residual otherwise. Throws NoAssemblyError when no
// assembly exists.
CartesianPoint forward_kinematics(const JointVector& rho, const DesignParameters& params,
                                  FkInfo* info = nullptr);

// residual_i = ||p - (a_i + rho_i e_i)|| - L; zero for consistent pairs.
Vec3 loop_closure_residual(const CartesianPoint& p, const JointVector& rho,
                           const DesignParameters& params);

}  // namespace orthokin
