#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "orthokin/math.hpp"

namespace orthokin {

// Numeric thresholds shared by every module.
//   geom_eps         : dimensionless geometry checks (axis orthonormality,
//                      anchor coincidence, closed-form FK guard), scaled by L
//                      where a length is compared
//   singular_det_eps : threshold on |det A|/L^3 and |eta_i|/L for singularity
//                      classification
//   residual_eps     : loop-closure residual tolerance, meters
//   iter_max         : iteration cap for the FK Newton fallback
struct ToleranceConfig {
    double geom_eps = 1e-10;
    double singular_det_eps = 1e-9;
    double residual_eps = 1e-9;
    int iter_max = 60;
};

// Tool point (or Cartesian velocity, same role), meters.
struct CartesianPoint : Vec3 {
    CartesianPoint() = default;
    CartesianPoint(double px, double py, double pz) : Vec3{px, py, pz} {}
    explicit CartesianPoint(const Vec3& v) : Vec3(v) {}
};

// Actuated prismatic coordinates (or joint rates), meters.
struct JointVector : Vec3 {
    JointVector() = default;
    JointVector(double r1, double r2, double r3) : Vec3{r1, r2, r3} {}
    explicit JointVector(const Vec3& v) : Vec3(v) {}
};

struct JointLimits {
    std::array<double, 3> lower{};
    std::array<double, 3> upper{};
};

// Full geometric definition of the machine. Legs are numbered 1..3 in every
// report; arrays are indexed 0..2.
//
// Leg i: slider at b_i = a_i + rho_i * e_i on rail axis e_i anchored at a_i,
// fixed-length link of length L from the slider to the tool point. The branch
// sign selects the inverse-kinematics solution branch (working mode) per leg.
//
// Immutable after construction; safe to share across threads.
struct DesignParameters {
    double leg_length = 1.0;
    std::array<Vec3, 3> rail_axes{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    std::array<Vec3, 3> rail_anchors{};
    std::array<int, 3> branch_signs{+1, +1, +1};
    std::optional<JointLimits> joint_limits;
    ToleranceConfig tolerances;
};

// One leg of a configuration: anchor a, slider b, link attachment c (the tool
// point for this design) and eta = (c - b) . e, the projection of the link on
// the rail axis.
struct LegState {
    Vec3 a;
    Vec3 b;
    Vec3 c;
    double eta = 0.0;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

struct IsotropicConfiguration {
    CartesianPoint point;
    JointVector joints;
};

// Zero-offset model: orthogonal Cartesian rail axes, all anchors at the
// origin, positive branch signs, joint limits unset. Throws
// std::invalid_argument for non-positive leg length.
DesignParameters canonical_design(double leg_length);

// Lists every violated invariant; empty report iff the parameters are valid.
ValidationReport validate(const DesignParameters& params);

// True when the rail axes are orthonormal and the anchors coincide, i.e. the
// design is a (possibly rotated/translated) zero-offset machine.
bool is_canonical_style(const DesignParameters& params);

// Configuration at which the kinematic Jacobian is isotropic: the common
// anchor point, with rho_i = s_i * L. Requires a valid canonical-style design.
IsotropicConfiguration isotropic_configuration(const DesignParameters& params);

// Machine definition JSON. Every key is optional and defaults to the
// canonical L = 1 model:
//   leg_length    number (m)
//   rail_axes     3x3 array, rows e1,e2,e3
//   rail_anchors  3x3 array, rows a1,a2,a3
//   branch_signs  [s1,s2,s3], each +1 or -1
//   joint_limits  [[lo,hi],[lo,hi],[lo,hi]] or null
//   tolerances    {geom_eps, singular_det_eps, residual_eps, iter_max}
// Unknown keys and failed invariants raise ConfigError.
DesignParameters parse_design(const std::string& json_text);
DesignParameters load_design(const std::string& path);
std::string design_to_json(const DesignParameters& params);

}  // namespace orthokin
