#pragma once

#include <stdexcept>
#include <string>

namespace orthokin {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a machine definition file cannot be parsed or fails validation.
struct ConfigError : Error {
    using Error::Error;
};

// Inverse kinematics: requested point lies outside the reach of `leg` (1-based).
struct UnreachableError : Error {
    int leg;
    explicit UnreachableError(int leg_index)
        : Error("point unreachable by leg " + std::to_string(leg_index)),
          leg(leg_index) {}
};

// Forward kinematics: no assembly of the three legs exists for the given
// joint coordinates under the design's branch signs.
struct NoAssemblyError : Error {
    using Error::Error;
};

// assemble_matrices: the (point, joints) pair violates loop closure.
struct InconsistentConfigurationError : Error {
    using Error::Error;
};

enum class SingularityKind { Regular, ParallelSingular, SerialSingular, Both };

inline const char* to_string(SingularityKind k) {
    switch (k) {
        case SingularityKind::Regular: return "Regular";
        case SingularityKind::ParallelSingular: return "ParallelSingular";
        case SingularityKind::SerialSingular: return "SerialSingular";
        case SingularityKind::Both: return "Both";
    }
    return "?";
}

// Velocity maps / manipulability requested at a singular configuration.
struct SingularityError : Error {
    SingularityKind kind;
    SingularityError(SingularityKind k, const std::string& what)
        : Error(what), kind(k) {}
};

// Condition number with a vanishing smallest singular value.
struct InfiniteConditionError : Error {
    using Error::Error;
};

// Cross-section offset outside the workspace model bounds.
struct OffsetOutOfBoundsError : Error {
    using Error::Error;
};

// Joint-limit synthesis: even the isotropic point fails the feasibility spec.
struct DegenerateSpecError : Error {
    using Error::Error;
};

}  // namespace orthokin
