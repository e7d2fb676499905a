#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthokin/performance.hpp"

namespace orthokin {

// Pointwise feasibility predicate configuration. A point is feasible when it
// is reachable, lies within the joint limits (when the design has them and
// require_joint_limits is set), keeps both normalized singularity margins
// above singular_margin, and keeps every velocity amplification factor within
// [psi_min, psi_max]. Reachability is structurally required; the flag only
// documents that.
struct FeasibilitySpec {
    bool require_reachable = true;
    bool require_joint_limits = true;
    double psi_min = kPsiLowerBound;
    double psi_max = kPsiUpperBound;
    double singular_margin = 1e-4;  // on |det A|/L^3 and min |eta_i|/L
};

enum class FeasibilityReason {
    Feasible,
    Unreachable,
    JointLimit,
    SerialMargin,
    ParallelMargin,
    PsiBound,
};

const char* to_string(FeasibilityReason r);

struct PointClassification {
    bool feasible = false;
    FeasibilityReason reason = FeasibilityReason::Feasible;
};

PointClassification classify_point(const CartesianPoint& p,
                                   const DesignParameters& params,
                                   const FeasibilitySpec& spec);

struct Box {
    Vec3 lo;
    Vec3 hi;
    bool empty() const { return !(lo.x < hi.x && lo.y < hi.y && lo.z < hi.z); }
};

// Cube of side 4L centered at the isotropic point; covers the reachable set
// (contained in the intersection of three radius-L cylinders) with margin.
Box default_analysis_bounds(const DesignParameters& params);

enum class CellLabel : std::uint8_t { Inside, Outside, Boundary };

// Octree leaf. ix/iy/iz is the min corner and span the edge, both in units of
// the base grid (2^max_depth cells per axis over the bounds), so adjacency
// and coverage tests are exact integer arithmetic.
struct WorkspaceCell {
    Vec3 center;
    double half_width = 0.0;
    int depth = 0;
    CellLabel label = CellLabel::Outside;
    int component_id = -1;  // assigned to Inside cells by t_connected_regions
    std::int32_t ix = 0, iy = 0, iz = 0;
    std::int32_t span = 0;
};

// Classified octree over an axis-aligned box. Leaves partition the bounds and
// are stored in depth-first Morton child order, which is independent of the
// evaluation schedule. volume_lower sums Inside cells; volume_upper adds the
// Boundary cells.
struct WorkspaceModel {
    std::vector<WorkspaceCell> cells;
    Box bounds;
    int max_depth = 0;
    double volume_lower = 0.0;
    double volume_upper = 0.0;
    int components = 0;
    int largest_component = -1;
    DesignParameters params;
    FeasibilitySpec spec;

    double base_cell_size(int axis) const {
        return (bounds.hi[axis] - bounds.lo[axis]) / double(std::int64_t(1) << max_depth);
    }
};

// Recursive subdivision with 9 probes per cell (8 corners + center). A cell
// at depth >= 2 whose probes all agree is labeled uniformly; disagreeing
// cells subdivide until max_depth and are then labeled Boundary. Probe
// results are cached on the shared corner lattice, so every point is
// classified once. max_depth must lie in [3, 12].
WorkspaceModel build_octree(const DesignParameters& params, const FeasibilitySpec& spec,
                            const Box& bounds, int max_depth);

// Flood fill over face-adjacent Inside cells (faces of different depths count
// when they overlap). Assigns component_id, fills components and
// largest_component, and returns the component count.
int t_connected_regions(WorkspaceModel& model);

enum class Axis : int { X = 0, Y = 1, Z = 2 };

// Occupancy grid over the slice plane axis = offset, sampled by
// classify_point on a resolution x resolution grid spanning the model bounds
// (endpoints included). Row r, column c is grid[r * resolution + c]; columns
// sweep the first remaining axis in x,y,z order, rows the second.
struct CrossSection {
    Axis axis = Axis::Z;
    double offset = 0.0;
    int resolution = 0;
    std::vector<std::uint8_t> grid;

    bool at(int row, int col) const { return grid[std::size_t(row) * resolution + col] != 0; }
};

// Throws OffsetOutOfBoundsError when offset leaves the model bounds.
CrossSection cross_section(const WorkspaceModel& model, Axis axis, double offset,
                           int resolution);

struct SynthesizedLimits {
    JointLimits limits;       // min/max of rho over the verified cube samples
    double cube_edge = 0.0;   // edge of the largest verified cube
    CartesianPoint center;    // isotropic point
};

// Largest cube centered at the isotropic point whose resolution^3 sample grid
// is fully feasible with joint limits disabled; the edge is located by
// bisection to a relative tolerance of 1e-3. Throws DegenerateSpecError when
// the isotropic point itself is infeasible.
SynthesizedLimits synthesize_joint_limits(const DesignParameters& params,
                                          const FeasibilitySpec& spec, int resolution);

// Edge of the largest axis-aligned cube centered at the isotropic point that
// is fully covered by Inside cells, located by bisection on the base grid.
// Returns 0 when even one base cell at the center is not Inside.
double inscribed_cube_edge(const WorkspaceModel& model);

}  // namespace orthokin
