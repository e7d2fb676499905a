#pragma once

#include <cstdint>
#include <unordered_map>

#include "orthokin/workspace.hpp"

namespace orthokin::detail {

// One base-grid face on an axis-aligned plane between two base cells. low /
// high hold the indices (into model.cells) of the Inside leaves touching the
// face from below / above the plane, or -1.
struct FaceRecord {
    std::int32_t low = -1;
    std::int32_t high = -1;
};

// Packs (axis, plane, u, v); all coordinates fit 13 bits at max_depth <= 12.
inline std::uint64_t face_key(int axis, std::int64_t plane, std::int64_t u, std::int64_t v) {
    return (std::uint64_t(axis) << 48) | (std::uint64_t(plane) << 32) |
           (std::uint64_t(u) << 16) | std::uint64_t(v);
}

// Enumerates every base-grid face of every Inside leaf. Two Inside leaves are
// face-adjacent exactly when some record carries both sides; a leaf face is
// an exterior mesh face exactly when some of its base faces lack the opposite
// side.
std::unordered_map<std::uint64_t, FaceRecord> inside_face_map(const WorkspaceModel& model);

}  // namespace orthokin::detail
