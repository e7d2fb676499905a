#include "orthokin/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "workspace_internal.hpp"

namespace orthokin {

std::string fmt_g17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// Corner offsets (in {0,1} units of the face rectangle) for each of the six
// face directions, ordered so the quad normal points out of the cell.
// dir = 2*axis + (0: low face, 1: high face).
struct FaceCorners {
    int u[4];
    int v[4];
};

constexpr FaceCorners kLowFace = {{0, 0, 1, 1}, {0, 1, 1, 0}};
constexpr FaceCorners kHighFace = {{0, 1, 1, 0}, {0, 0, 1, 1}};

}  // namespace

void write_workspace_ply(const WorkspaceModel& model, std::ostream& out) {
    const auto faces = detail::inside_face_map(model);

    // exposed(cell, dir): some base face on that side lacks an Inside neighbor
    auto exposed = [&](const WorkspaceCell& c, int axis, bool high) {
        const std::int32_t lo[3] = {c.ix, c.iy, c.iz};
        const int ua = (axis + 1) % 3;
        const int va = (axis + 2) % 3;
        const std::int64_t plane = high ? lo[axis] + c.span : lo[axis];
        for (std::int32_t u = lo[ua]; u < lo[ua] + c.span; ++u) {
            for (std::int32_t v = lo[va]; v < lo[va] + c.span; ++v) {
                const auto it = faces.find(detail::face_key(axis, plane, u, v));
                const detail::FaceRecord rec =
                    it == faces.end() ? detail::FaceRecord{} : it->second;
                if ((high ? rec.high : rec.low) < 0) return true;
            }
        }
        return false;
    };

    // vertices on the exact corner lattice, deduplicated by integer key
    std::map<std::tuple<std::int32_t, std::int32_t, std::int32_t>, int> vertex_ids;
    std::vector<std::array<std::int32_t, 3>> vertices;
    std::vector<std::array<int, 4>> quads;

    auto vertex = [&](std::int32_t x, std::int32_t y, std::int32_t z) {
        auto [it, inserted] = vertex_ids.emplace(std::make_tuple(x, y, z),
                                                 int(vertices.size()));
        if (inserted) vertices.push_back({x, y, z});
        return it->second;
    };

    for (const WorkspaceCell& c : model.cells) {
        if (c.label != CellLabel::Inside) continue;
        const std::int32_t lo[3] = {c.ix, c.iy, c.iz};
        for (int axis = 0; axis < 3; ++axis) {
            const int ua = (axis + 1) % 3;
            const int va = (axis + 2) % 3;
            for (int side = 0; side < 2; ++side) {
                const bool high = side == 1;
                if (!exposed(c, axis, high)) continue;
                const FaceCorners& fc = high ? kHighFace : kLowFace;
                std::array<int, 4> quad;
                for (int k = 0; k < 4; ++k) {
                    std::int32_t p[3];
                    p[axis] = lo[axis] + (high ? c.span : 0);
                    p[ua] = lo[ua] + fc.u[k] * c.span;
                    p[va] = lo[va] + fc.v[k] * c.span;
                    quad[k] = vertex(p[0], p[1], p[2]);
                }
                quads.push_back(quad);
            }
        }
    }

    out << "ply\nformat ascii 1.0\n";
    out << "comment workspace octree inside-cell boundary\n";
    out << "element vertex " << vertices.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << quads.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";
    for (const auto& v : vertices) {
        out << fmt_g17(model.bounds.lo.x + v[0] * model.base_cell_size(0)) << ' '
            << fmt_g17(model.bounds.lo.y + v[1] * model.base_cell_size(1)) << ' '
            << fmt_g17(model.bounds.lo.z + v[2] * model.base_cell_size(2)) << '\n';
    }
    for (const auto& q : quads)
        out << "4 " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
}

void write_cross_section_csv(const CrossSection& cs, std::ostream& out) {
    static const char* axis_names[3] = {"x", "y", "z"};
    out << "axis,offset,resolution\n";
    out << axis_names[int(cs.axis)] << ',' << fmt_g17(cs.offset) << ','
        << cs.resolution << '\n';
    for (int r = 0; r < cs.resolution; ++r) {
        for (int c = 0; c < cs.resolution; ++c) {
            if (c) out << ',';
            out << (cs.at(r, c) ? '1' : '0');
        }
        out << '\n';
    }
}

std::string workspace_summary_json(const WorkspaceModel& model,
                                   const std::optional<SynthesizedLimits>& limits) {
    nlohmann::ordered_json j;
    j["bounds"]["lo"] = {model.bounds.lo.x, model.bounds.lo.y, model.bounds.lo.z};
    j["bounds"]["hi"] = {model.bounds.hi.x, model.bounds.hi.y, model.bounds.hi.z};
    j["max_depth"] = model.max_depth;

    std::size_t inside = 0, outside = 0, boundary = 0;
    for (const WorkspaceCell& c : model.cells) {
        if (c.label == CellLabel::Inside) ++inside;
        else if (c.label == CellLabel::Outside) ++outside;
        else ++boundary;
    }
    j["cells"] = {{"total", model.cells.size()},
                  {"inside", inside},
                  {"outside", outside},
                  {"boundary", boundary}};
    j["volume_lower"] = model.volume_lower;
    j["volume_upper"] = model.volume_upper;
    j["components"] = model.components;
    j["largest_component"] = model.largest_component;
    j["inscribed_cube_edge"] = inscribed_cube_edge(model);
    if (limits) {
        j["synthesized_limits"]["cube_edge"] = limits->cube_edge;
        j["synthesized_limits"]["center"] = {limits->center.x, limits->center.y,
                                             limits->center.z};
        for (int i = 0; i < 3; ++i)
            j["synthesized_limits"]["joint_limits"][i] = {limits->limits.lower[i],
                                                          limits->limits.upper[i]};
    } else {
        j["synthesized_limits"] = nullptr;
    }
    return j.dump(2) + "\n";
}

}  // namespace orthokin
