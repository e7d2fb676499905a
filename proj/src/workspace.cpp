#include "orthokin/workspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "workspace_internal.hpp"

namespace orthokin {

namespace {

// absolute slack on the psi comparisons, so configurations sitting exactly on
// a bound (the isotropic point under psi_min = psi_max = 1, synthesized-limit
// boundary samples) classify stably
constexpr double kPsiSlack = 1e-9;

constexpr int kMinUniformDepth = 2;

}  // namespace

const char* to_string(FeasibilityReason r) {
    switch (r) {
        case FeasibilityReason::Feasible: return "Feasible";
        case FeasibilityReason::Unreachable: return "Unreachable";
        case FeasibilityReason::JointLimit: return "JointLimit";
        case FeasibilityReason::SerialMargin: return "SerialMargin";
        case FeasibilityReason::ParallelMargin: return "ParallelMargin";
        case FeasibilityReason::PsiBound: return "PsiBound";
    }
    return "?";
}

PointClassification classify_point(const CartesianPoint& p,
                                   const DesignParameters& params,
                                   const FeasibilitySpec& spec) {
    auto sol = try_inverse_kinematics(p, params);
    if (!sol) return {false, FeasibilityReason::Unreachable};

    if (spec.require_joint_limits && params.joint_limits) {
        const double slack = 1e-12 * params.leg_length;
        for (int i = 0; i < 3; ++i) {
            if (sol->rho[i] < params.joint_limits->lower[i] - slack ||
                sol->rho[i] > params.joint_limits->upper[i] + slack)
                return {false, FeasibilityReason::JointLimit};
        }
    }

    const double L = params.leg_length;
    Mat3 a;
    double min_eta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        a.rows[i] = sol->legs[i].c - sol->legs[i].b;
        min_eta = std::min(min_eta, std::abs(sol->legs[i].eta));
    }
    if (min_eta / L <= spec.singular_margin)
        return {false, FeasibilityReason::SerialMargin};
    if (std::abs(a.determinant()) / (L * L * L) <= spec.singular_margin)
        return {false, FeasibilityReason::ParallelMargin};

    Vec3 eta{0, 0, 0};
    for (int i = 0; i < 3; ++i) eta[i] = sol->legs[i].eta;
    Mat3 j;
    if (!solve3(a, Mat3::diagonal(eta), j))
        return {false, FeasibilityReason::ParallelMargin};

    // the velocity amplification factors are the singular values of J
    const auto sigma = singular_values_3x3(j);
    for (double s : sigma)
        if (s < spec.psi_min - kPsiSlack || s > spec.psi_max + kPsiSlack)
            return {false, FeasibilityReason::PsiBound};

    return {true, FeasibilityReason::Feasible};
}

Box default_analysis_bounds(const DesignParameters& params) {
    Vec3 center;
    if (is_canonical_style(params)) {
        center = isotropic_configuration(params).point;
    } else {
        center = (params.rail_anchors[0] + params.rail_anchors[1] +
                  params.rail_anchors[2]) / 3.0;
    }
    const double half = 2.0 * params.leg_length;
    return {center - Vec3{half, half, half}, center + Vec3{half, half, half}};
}

namespace {

class OctreeBuilder {
public:
    OctreeBuilder(const DesignParameters& params, const FeasibilitySpec& spec,
                  const Box& bounds, int max_depth)
        : params_(params), spec_(spec), bounds_(bounds), max_depth_(max_depth) {
        for (int a = 0; a < 3; ++a)
            half_step_[a] = (bounds.hi[a] - bounds.lo[a]) /
                            double(std::int64_t(2) << max_depth);
    }

    WorkspaceModel build() {
        WorkspaceModel model;
        model.bounds = bounds_;
        model.max_depth = max_depth_;
        model.params = params_;
        model.spec = spec_;
        subdivide(0, 0, 0, 0, std::int32_t(1) << max_depth_);
        model.cells = std::move(cells_);

        for (const WorkspaceCell& c : model.cells) {
            const double vol = 8.0 * c.span * c.span * c.span * half_step_[0] *
                               half_step_[1] * half_step_[2];
            if (c.label == CellLabel::Inside) model.volume_lower += vol;
            if (c.label != CellLabel::Outside) model.volume_upper += vol;
        }
        return model;
    }

private:
    // Probe coordinates live on the doubled base lattice so cell corners and
    // centers of every depth share one cache.
    bool probe(std::int64_t x2, std::int64_t y2, std::int64_t z2) {
        const std::uint64_t n2 = (std::uint64_t(2) << max_depth_) + 1;
        const std::uint64_t key = (std::uint64_t(x2) * n2 + std::uint64_t(y2)) * n2 +
                                  std::uint64_t(z2);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const CartesianPoint p(bounds_.lo.x + double(x2) * half_step_[0],
                               bounds_.lo.y + double(y2) * half_step_[1],
                               bounds_.lo.z + double(z2) * half_step_[2]);
        const bool feasible = classify_point(p, params_, spec_).feasible;
        cache_.emplace(key, feasible);
        return feasible;
    }

    void subdivide(int depth, std::int32_t ix, std::int32_t iy, std::int32_t iz,
                   std::int32_t span) {
        int feasible_count = 0;
        for (int k = 0; k < 8; ++k) {
            const std::int64_t x2 = 2 * std::int64_t(ix + ((k & 1) ? span : 0));
            const std::int64_t y2 = 2 * std::int64_t(iy + ((k & 2) ? span : 0));
            const std::int64_t z2 = 2 * std::int64_t(iz + ((k & 4) ? span : 0));
            feasible_count += probe(x2, y2, z2) ? 1 : 0;
        }
        feasible_count += probe(2 * std::int64_t(ix) + span, 2 * std::int64_t(iy) + span,
                                2 * std::int64_t(iz) + span)
                              ? 1
                              : 0;

        const bool uniform = feasible_count == 0 || feasible_count == 9;
        if (uniform && depth >= kMinUniformDepth) {
            emit(depth, ix, iy, iz, span,
                 feasible_count == 9 ? CellLabel::Inside : CellLabel::Outside);
            return;
        }
        if (depth == max_depth_) {
            emit(depth, ix, iy, iz, span,
                 uniform ? (feasible_count == 9 ? CellLabel::Inside : CellLabel::Outside)
                         : CellLabel::Boundary);
            return;
        }
        const std::int32_t h = span / 2;
        for (int k = 0; k < 8; ++k)
            subdivide(depth + 1, ix + ((k & 1) ? h : 0), iy + ((k & 2) ? h : 0),
                      iz + ((k & 4) ? h : 0), h);
    }

    void emit(int depth, std::int32_t ix, std::int32_t iy, std::int32_t iz,
              std::int32_t span, CellLabel label) {
        WorkspaceCell c;
        c.depth = depth;
        c.label = label;
        c.ix = ix;
        c.iy = iy;
        c.iz = iz;
        c.span = span;
        c.center = {bounds_.lo.x + (2.0 * ix + span) * half_step_[0],
                    bounds_.lo.y + (2.0 * iy + span) * half_step_[1],
                    bounds_.lo.z + (2.0 * iz + span) * half_step_[2]};
        c.half_width = span * half_step_[0];
        cells_.push_back(c);
    }

    const DesignParameters& params_;
    const FeasibilitySpec& spec_;
    Box bounds_;
    int max_depth_;
    double half_step_[3];
    std::unordered_map<std::uint64_t, bool> cache_;
    std::vector<WorkspaceCell> cells_;
};

}  // namespace

WorkspaceModel build_octree(const DesignParameters& params, const FeasibilitySpec& spec,
                            const Box& bounds, int max_depth) {
    if (bounds.empty()) throw std::invalid_argument("octree bounds must be nonempty");
    if (max_depth < 3 || max_depth > 12)
        throw std::invalid_argument("octree max_depth must lie in [3, 12]");
    WorkspaceModel model = OctreeBuilder(params, spec, bounds, max_depth).build();
    t_connected_regions(model);
    return model;
}

namespace detail {

std::unordered_map<std::uint64_t, FaceRecord> inside_face_map(const WorkspaceModel& model) {
    std::unordered_map<std::uint64_t, FaceRecord> faces;
    for (std::size_t idx = 0; idx < model.cells.size(); ++idx) {
        const WorkspaceCell& c = model.cells[idx];
        if (c.label != CellLabel::Inside) continue;
        const std::int32_t lo[3] = {c.ix, c.iy, c.iz};
        for (int axis = 0; axis < 3; ++axis) {
            const int ua = (axis + 1) % 3;
            const int va = (axis + 2) % 3;
            for (std::int32_t u = lo[ua]; u < lo[ua] + c.span; ++u) {
                for (std::int32_t v = lo[va]; v < lo[va] + c.span; ++v) {
                    // high face of this cell: cell is below the plane
                    FaceRecord& fh = faces[face_key(axis, lo[axis] + c.span, u, v)];
                    fh.low = std::int32_t(idx);
                    // low face: cell is above the plane
                    FaceRecord& fl = faces[face_key(axis, lo[axis], u, v)];
                    fl.high = std::int32_t(idx);
                }
            }
        }
    }
    return faces;
}

}  // namespace detail

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::int32_t find(std::int32_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

int t_connected_regions(WorkspaceModel& model) {
    for (WorkspaceCell& c : model.cells) c.component_id = -1;

    UnionFind uf(model.cells.size());
    const auto faces = detail::inside_face_map(model);
    for (const auto& [key, rec] : faces) {
        (void)key;
        if (rec.low >= 0 && rec.high >= 0) uf.unite(rec.low, rec.high);
    }

    // canonical ids in storage order, independent of hash iteration order
    const double base_volume =
        model.base_cell_size(0) * model.base_cell_size(1) * model.base_cell_size(2);
    std::unordered_map<std::int32_t, int> root_to_id;
    std::vector<double> component_volume;
    for (std::size_t idx = 0; idx < model.cells.size(); ++idx) {
        WorkspaceCell& c = model.cells[idx];
        if (c.label != CellLabel::Inside) continue;
        const std::int32_t root = uf.find(std::int32_t(idx));
        auto [it, inserted] = root_to_id.emplace(root, int(root_to_id.size()));
        c.component_id = it->second;
        if (inserted) component_volume.push_back(0.0);
        component_volume[c.component_id] +=
            double(c.span) * c.span * c.span * base_volume;
    }

    model.components = int(root_to_id.size());
    model.largest_component = -1;
    double best = -1.0;
    for (int id = 0; id < model.components; ++id) {
        if (component_volume[id] > best) {
            best = component_volume[id];
            model.largest_component = id;
        }
    }
    return model.components;
}

CrossSection cross_section(const WorkspaceModel& model, Axis axis, double offset,
                           int resolution) {
    const int k = int(axis);
    if (offset < model.bounds.lo[k] || offset > model.bounds.hi[k])
        throw OffsetOutOfBoundsError("cross-section offset outside model bounds");
    if (resolution < 1) throw std::invalid_argument("resolution must be positive");

    const int ua = (k + 1) % 3 < (k + 2) % 3 ? (k + 1) % 3 : (k + 2) % 3;
    const int va = ua == (k + 1) % 3 ? (k + 2) % 3 : (k + 1) % 3;

    CrossSection cs;
    cs.axis = axis;
    cs.offset = offset;
    cs.resolution = resolution;
    cs.grid.resize(std::size_t(resolution) * resolution);

    auto coord = [&](int axis_index, int i) {
        const double lo = model.bounds.lo[axis_index];
        const double hi = model.bounds.hi[axis_index];
        if (resolution == 1) return 0.5 * (lo + hi);
        return lo + (hi - lo) * double(i) / double(resolution - 1);
    };

    for (int r = 0; r < resolution; ++r) {
        for (int c = 0; c < resolution; ++c) {
            Vec3 p;
            p[k] = offset;
            p[ua] = coord(ua, c);
            p[va] = coord(va, r);
            cs.grid[std::size_t(r) * resolution + c] =
                classify_point(CartesianPoint(p), model.params, model.spec).feasible ? 1 : 0;
        }
    }
    return cs;
}

namespace {

// All resolution^3 grid samples of the cube pass classify_point.
bool cube_feasible(const CartesianPoint& center, double edge, int resolution,
                   const DesignParameters& params, const FeasibilitySpec& spec) {
    const double h = edge / 2.0;
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            for (int k = 0; k < resolution; ++k) {
                Vec3 p = center;
                if (resolution > 1) {
                    p.x += -h + edge * double(i) / (resolution - 1);
                    p.y += -h + edge * double(j) / (resolution - 1);
                    p.z += -h + edge * double(k) / (resolution - 1);
                }
                if (!classify_point(CartesianPoint(p), params, spec).feasible)
                    return false;
            }
        }
    }
    return true;
}

}  // namespace

SynthesizedLimits synthesize_joint_limits(const DesignParameters& params,
                                          const FeasibilitySpec& spec, int resolution) {
    if (resolution < 2) throw std::invalid_argument("synthesis resolution must be >= 2");
    const IsotropicConfiguration iso = isotropic_configuration(params);

    FeasibilitySpec probe_spec = spec;
    probe_spec.require_joint_limits = false;

    if (!classify_point(iso.point, params, probe_spec).feasible)
        throw DegenerateSpecError("the isotropic point fails the feasibility spec");

    const double L = params.leg_length;
    double lo = 0.0;
    double hi = 4.0 * L;  // corners unreachable, so certainly infeasible
    for (int it = 0; it < 60 && (hi - lo) > 1e-3 * hi && hi > 1e-12 * L; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cube_feasible(iso.point, mid, resolution, params, probe_spec))
            lo = mid;
        else
            hi = mid;
    }

    SynthesizedLimits out;
    out.center = iso.point;
    out.cube_edge = lo;
    for (int i = 0; i < 3; ++i) {
        out.limits.lower[i] = iso.joints[i];
        out.limits.upper[i] = iso.joints[i];
    }
    if (lo > 0.0) {
        const double h = lo / 2.0;
        for (int i = 0; i < resolution; ++i) {
            for (int j = 0; j < resolution; ++j) {
                for (int k = 0; k < resolution; ++k) {
                    Vec3 p = iso.point;
                    p.x += -h + lo * double(i) / (resolution - 1);
                    p.y += -h + lo * double(j) / (resolution - 1);
                    p.z += -h + lo * double(k) / (resolution - 1);
                    const auto sol = try_inverse_kinematics(CartesianPoint(p), params);
                    if (!sol) continue;  // cannot happen for a verified cube
                    for (int leg = 0; leg < 3; ++leg) {
                        out.limits.lower[leg] = std::min(out.limits.lower[leg], sol->rho[leg]);
                        out.limits.upper[leg] = std::max(out.limits.upper[leg], sol->rho[leg]);
                    }
                }
            }
        }
    }
    return out;
}

double inscribed_cube_edge(const WorkspaceModel& model) {
    if (!is_canonical_style(model.params)) return 0.0;
    const Vec3 center = isotropic_configuration(model.params).point;

    const std::int64_t n = std::int64_t(1) << model.max_depth;
    std::int64_t c[3];
    for (int a = 0; a < 3; ++a) {
        const double t = (center[a] - model.bounds.lo[a]) / model.base_cell_size(a);
        c[a] = std::clamp(std::int64_t(std::llround(t)), std::int64_t(0), n);
    }

    std::vector<const WorkspaceCell*> inside;
    for (const WorkspaceCell& cell : model.cells)
        if (cell.label == CellLabel::Inside) inside.push_back(&cell);

    auto covered = [&](std::int64_t h) {
        if (h == 0) return true;
        std::int64_t need = 1;
        for (int a = 0; a < 3; ++a) {
            if (c[a] - h < 0 || c[a] + h > n) return false;
            need *= 2 * h;
        }
        std::int64_t have = 0;
        for (const WorkspaceCell* cell : inside) {
            const std::int64_t lo[3] = {cell->ix, cell->iy, cell->iz};
            std::int64_t vol = 1;
            for (int a = 0; a < 3; ++a) {
                const std::int64_t o_lo = std::max(lo[a], c[a] - h);
                const std::int64_t o_hi = std::min(lo[a] + cell->span, c[a] + h);
                if (o_hi <= o_lo) {
                    vol = 0;
                    break;
                }
                vol *= o_hi - o_lo;
            }
            have += vol;
        }
        return have == need;
    };

    std::int64_t lo = 0, hi = n / 2;
    while (lo < hi) {
        const std::int64_t mid = (lo + hi + 1) / 2;
        if (covered(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return 2.0 * double(lo) * model.base_cell_size(0);
}

}  // namespace orthokin
