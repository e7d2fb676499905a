// orthokin - kinematic, singularity, performance and workspace analysis for
// orthogonal-rail translational parallel machines.
//
// Subcommands: analyze, map, workspace, limits, isotropy. Exit codes:
// 0 success, 2 infeasible result, 3 invalid input.

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "orthokin/io.hpp"
#include "orthokin/parallel.hpp"
#include "orthokin/performance.hpp"
#include "orthokin/workspace.hpp"

namespace {

using orthokin::Axis;
using orthokin::Box;
using orthokin::CartesianPoint;
using orthokin::DesignParameters;
using orthokin::FeasibilitySpec;
using orthokin::Vec3;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;

std::vector<double> parse_numbers(const std::string& text, std::size_t count,
                                  const std::string& what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (...) {
            throw orthokin::ConfigError(what + ": cannot parse number '" + item + "'");
        }
    }
    if (values.size() != count)
        throw orthokin::ConfigError(what + ": expected " + std::to_string(count) +
                                    " comma-separated numbers");
    return values;
}

DesignParameters load_machine(const std::string& path) {
    if (path.empty()) return orthokin::canonical_design(1.0);
    return orthokin::load_design(path);
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw orthokin::ConfigError("cannot open output file: " + path);
    out << text;
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json mat_json(const orthokin::Mat3& m) {
    json j = json::array();
    for (int i = 0; i < 3; ++i) j.push_back(vec_json(m.row(i)));
    return j;
}

json residual_json(const orthokin::IsotropyResidual& r) {
    json j;
    j["norm_ratio"] = {r.norm_ratio[0], r.norm_ratio[1], r.norm_ratio[2]};
    j["orthogonality"] = {r.orthogonality[0], r.orthogonality[1], r.orthogonality[2]};
    j["max"] = r.max();
    return j;
}

int run_analyze(const std::string& machine, const std::string& point_arg,
                const std::string& out_path) {
    const DesignParameters params = load_machine(machine);
    const auto nums = parse_numbers(point_arg, 3, "--point");
    const CartesianPoint p(nums[0], nums[1], nums[2]);

    json j;
    j["point"] = vec_json(p);

    orthokin::IkSolution sol;
    try {
        sol = orthokin::inverse_kinematics(p, params);
    } catch (const orthokin::UnreachableError& e) {
        j["error"] = "unreachable";
        j["leg"] = e.leg;
        write_output(j.dump(2) + "\n", out_path);
        return kExitInfeasible;
    }

    const auto m = orthokin::assemble_matrices(p, sol, params);
    const auto report = orthokin::classify_singularity(m, params);

    j["rho"] = vec_json(sol.rho);
    j["boundary_flags"] = {sol.boundary_flags[0], sol.boundary_flags[1],
                           sol.boundary_flags[2]};
    j["eta"] = vec_json(m.eta);
    j["det_parallel"] = m.det_parallel;
    j["det_serial"] = m.det_serial;
    j["normalized_det_parallel"] = report.normalized_det_parallel;
    j["normalized_det_serial"] = report.normalized_det_serial;
    j["singularity"] = orthokin::to_string(report.kind);
    j["serial_legs"] = report.serial_legs;

    if (m.jacobian && m.jacobian_inverse) {
        const auto perf = orthokin::manipulability(m);
        j["sigma"] = {perf.singular_values[0], perf.singular_values[1],
                      perf.singular_values[2]};
        j["kappa"] = perf.kappa;
        // the displayed condition number takes a square root; the plain
        // largest/smallest ratio is carried alongside for comparison
        j["sigma_ratio"] = perf.singular_values[0] / perf.singular_values[2];
        j["psi"] = {perf.psi[0], perf.psi[1], perf.psi[2]};
        j["ellipsoid_axes"] = {perf.ellipsoid_axes[0], perf.ellipsoid_axes[1],
                               perf.ellipsoid_axes[2]};
        j["within_bounds"] = perf.within_bounds;
    } else {
        j["sigma"] = nullptr;
        j["kappa"] = nullptr;
        j["sigma_ratio"] = nullptr;
        j["psi"] = nullptr;
        j["ellipsoid_axes"] = nullptr;
        j["within_bounds"] = nullptr;
    }
    j["isotropy_residual"] = residual_json(orthokin::isotropy_residual(sol, m, params));

    write_output(j.dump(2) + "\n", out_path);
    return kExitOk;
}

int run_map(const std::string& machine, const std::string& region_arg, int resolution,
            const std::string& metric, const std::string& out_path) {
    const DesignParameters params = load_machine(machine);
    if (metric != "kappa" && metric != "psi-max" && metric != "psi-min")
        throw orthokin::ConfigError("unknown metric: " + metric);

    Box region = orthokin::default_analysis_bounds(params);
    if (!region_arg.empty()) {
        const auto n = parse_numbers(region_arg, 6, "--region");
        region = {{n[0], n[1], n[2]}, {n[3], n[4], n[5]}};
    }

    std::ostringstream out;
    out << "x,y,z,value\n";
    if (region.empty() || resolution < 1) {
        write_output(out.str(), out_path);
        return kExitOk;
    }

    const FeasibilitySpec spec;
    const std::size_t n = std::size_t(resolution);
    auto coord = [&](int axis, std::size_t i) {
        if (n == 1) return 0.5 * (region.lo[axis] + region.hi[axis]);
        return region.lo[axis] +
               (region.hi[axis] - region.lo[axis]) * double(i) / double(n - 1);
    };

    std::vector<double> values(n * n * n);
    orthokin::parallel_for(values.size(), [&](std::size_t idx) {
        const std::size_t i = idx / (n * n);
        const std::size_t jv = (idx / n) % n;
        const std::size_t k = idx % n;
        const CartesianPoint p(coord(0, i), coord(1, jv), coord(2, k));
        double value = std::numeric_limits<double>::quiet_NaN();
        if (orthokin::classify_point(p, params, spec).feasible) {
            const auto sol = orthokin::try_inverse_kinematics(p, params);
            const auto m = orthokin::assemble_matrices(p, *sol, params);
            const auto perf = orthokin::manipulability(m);
            if (metric == "kappa") value = perf.kappa;
            else if (metric == "psi-max") value = perf.psi[0];
            else value = perf.psi[2];
        }
        values[idx] = value;
    });

    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jv = 0; jv < n; ++jv)
            for (std::size_t k = 0; k < n; ++k, ++idx)
                out << orthokin::fmt_g17(coord(0, i)) << ','
                    << orthokin::fmt_g17(coord(1, jv)) << ','
                    << orthokin::fmt_g17(coord(2, k)) << ','
                    << orthokin::fmt_g17(values[idx]) << '\n';

    write_output(out.str(), out_path);
    return kExitOk;
}

int run_workspace(const std::string& machine, const std::string& region_arg, int depth,
                  const std::string& out_base, const std::string& format,
                  const std::string& section_arg, int resolution,
                  bool synthesized_limits) {
    DesignParameters params = load_machine(machine);
    const FeasibilitySpec spec;

    std::optional<orthokin::SynthesizedLimits> limits;
    if (synthesized_limits) {
        limits = orthokin::synthesize_joint_limits(params, spec, 21);
        params.joint_limits = limits->limits;
    }

    Box region = orthokin::default_analysis_bounds(params);
    if (!region_arg.empty()) {
        const auto nn = parse_numbers(region_arg, 6, "--region");
        region = {{nn[0], nn[1], nn[2]}, {nn[3], nn[4], nn[5]}};
    }

    const auto model = orthokin::build_octree(params, spec, region, depth);

    const bool want_ply = format.empty() || format == "ply";
    const bool want_json = format.empty() || format == "json";
    const bool want_csv = !section_arg.empty() && (format.empty() || format == "csv");

    if (want_ply) {
        std::ofstream ply(out_base + ".ply", std::ios::binary);
        if (!ply) throw orthokin::ConfigError("cannot open " + out_base + ".ply");
        orthokin::write_workspace_ply(model, ply);
    }
    if (want_json)
        write_output(orthokin::workspace_summary_json(model, limits), out_base + ".json");
    if (want_csv) {
        std::stringstream ss(section_arg);
        std::string axis_name, offset_text;
        if (!std::getline(ss, axis_name, ',') || !std::getline(ss, offset_text))
            throw orthokin::ConfigError("--section expects axis,offset (e.g. z,0.1)");
        Axis axis;
        if (axis_name == "x") axis = Axis::X;
        else if (axis_name == "y") axis = Axis::Y;
        else if (axis_name == "z") axis = Axis::Z;
        else throw orthokin::ConfigError("--section axis must be x, y or z");
        const double offset = parse_numbers(offset_text, 1, "--section offset")[0];
        const auto cs = orthokin::cross_section(model, axis, offset, resolution);
        std::ofstream csv(out_base + "_section.csv", std::ios::binary);
        if (!csv) throw orthokin::ConfigError("cannot open " + out_base + "_section.csv");
        orthokin::write_cross_section_csv(cs, csv);
    }

    return model.volume_lower > 0.0 ? kExitOk : kExitInfeasible;
}

int run_limits(const std::string& machine, int resolution, const std::string& out_path) {
    const DesignParameters params = load_machine(machine);
    const FeasibilitySpec spec;

    orthokin::SynthesizedLimits limits;
    try {
        limits = orthokin::synthesize_joint_limits(params, spec, resolution);
    } catch (const orthokin::DegenerateSpecError& e) {
        json j;
        j["error"] = "degenerate";
        j["message"] = e.what();
        write_output(j.dump(2) + "\n", out_path);
        return kExitInfeasible;
    }

    json j;
    j["cube_edge"] = limits.cube_edge;
    j["center"] = vec_json(limits.center);
    for (int i = 0; i < 3; ++i)
        j["joint_limits"][i] = {limits.limits.lower[i], limits.limits.upper[i]};
    j["psi_min"] = spec.psi_min;
    j["psi_max"] = spec.psi_max;
    write_output(j.dump(2) + "\n", out_path);
    return kExitOk;
}

int run_isotropy(const std::string& machine, const std::string& out_path) {
    const DesignParameters params = load_machine(machine);
    const auto iso = orthokin::isotropic_configuration(params);
    const auto sol = orthokin::inverse_kinematics(iso.point, params);
    const auto m = orthokin::assemble_matrices(iso.point, sol, params);
    const auto perf = orthokin::manipulability(m);
    const auto residual = orthokin::isotropy_residual(sol, m, params);

    json j;
    j["point"] = vec_json(iso.point);
    j["rho"] = vec_json(iso.joints);
    j["jacobian_inverse"] = m.jacobian_inverse ? mat_json(*m.jacobian_inverse) : json();
    j["kappa"] = perf.kappa;
    j["psi"] = {perf.psi[0], perf.psi[1], perf.psi[2]};
    j["residual"] = residual_json(residual);
    write_output(j.dump(2) + "\n", out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kinematics, singularity, performance and workspace analysis "
                 "for orthogonal-rail translational parallel machines"};
    app.require_subcommand(1);

    std::string machine, out_path, point_arg, region_arg, metric = "kappa";
    std::string format, section_arg;
    int depth = 6, resolution = 0;
    bool synthesized_limits = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--machine", machine, "machine definition JSON file");
        cmd->add_option("--out", out_path, "output path (stdout when omitted)");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "full report at one point");
    add_common(analyze);
    analyze->add_option("--point", point_arg, "tool point x,y,z (m)")->required();

    CLI::App* map_cmd = app.add_subcommand("map", "metric sampled on a grid, CSV");
    add_common(map_cmd);
    map_cmd->add_option("--region", region_arg, "box x0,y0,z0,x1,y1,z1 (m)");
    map_cmd->add_option("--resolution", resolution, "grid points per axis (default 21)");
    map_cmd->add_option("--metric", metric, "kappa | psi-max | psi-min");

    CLI::App* ws = app.add_subcommand("workspace", "octree workspace model, PLY + JSON");
    add_common(ws);
    ws->add_option("--region", region_arg, "box x0,y0,z0,x1,y1,z1 (m)");
    ws->add_option("--depth", depth, "octree depth, 3..12 (default 6)");
    ws->add_option("--format", format, "restrict output: csv | json | ply");
    ws->add_option("--section", section_arg, "cross-section axis,offset (e.g. z,0.0)");
    ws->add_option("--resolution", resolution, "cross-section grid (default 64)");
    ws->add_flag("--synthesized-limits", synthesized_limits,
                 "synthesize joint limits from the psi bounds before building");

    CLI::App* limits_cmd = app.add_subcommand("limits", "joint limits from the psi bounds");
    add_common(limits_cmd);
    limits_cmd->add_option("--resolution", resolution, "samples per axis (default 21)");

    CLI::App* iso = app.add_subcommand("isotropy", "isotropic configuration report");
    add_common(iso);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (analyze->parsed()) return run_analyze(machine, point_arg, out_path);
        if (map_cmd->parsed())
            return run_map(machine, region_arg, resolution > 0 ? resolution : 21, metric,
                           out_path);
        if (ws->parsed())
            return run_workspace(machine, region_arg, depth,
                                 out_path.empty() ? "workspace" : out_path, format,
                                 section_arg, resolution > 0 ? resolution : 64,
                                 synthesized_limits);
        if (limits_cmd->parsed())
            return run_limits(machine, resolution > 0 ? resolution : 21, out_path);
        if (iso->parsed()) return run_isotropy(machine, out_path);
    } catch (const orthokin::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const orthokin::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
