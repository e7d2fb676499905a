#include "orthokin/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "orthokin/errors.hpp"

namespace orthokin {

DesignParameters canonical_design(double leg_length) {
    if (!(leg_length > 0.0) || !std::isfinite(leg_length))
        throw std::invalid_argument("leg length must be positive and finite");
    DesignParameters p;
    p.leg_length = leg_length;
    return p;
}

ValidationReport validate(const DesignParameters& params) {
    ValidationReport report;
    auto fail = [&](const std::string& msg) { report.violations.push_back(msg); };

    const double eps = params.tolerances.geom_eps;
    if (!(params.leg_length > 0.0) || !std::isfinite(params.leg_length))
        fail("leg_length must be positive");

    for (int i = 0; i < 3; ++i) {
        const Vec3& e = params.rail_axes[i];
        if (!e.all_finite()) {
            fail("rail axis " + std::to_string(i + 1) + " has non-finite components");
            continue;
        }
        if (std::abs(e.norm() - 1.0) > eps)
            fail("rail axis " + std::to_string(i + 1) + " is not unit length");
        if (!params.rail_anchors[i].all_finite())
            fail("rail anchor " + std::to_string(i + 1) + " has non-finite components");
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(params.rail_axes[i].dot(params.rail_axes[j])) > eps)
                fail("rail axes " + std::to_string(i + 1) + " and " +
                     std::to_string(j + 1) + " are not orthogonal");

    for (int i = 0; i < 3; ++i)
        if (params.branch_signs[i] != 1 && params.branch_signs[i] != -1)
            fail("branch sign " + std::to_string(i + 1) + " must be +1 or -1");

    if (params.joint_limits) {
        for (int i = 0; i < 3; ++i)
            if (!(params.joint_limits->lower[i] < params.joint_limits->upper[i]))
                fail("joint limits for leg " + std::to_string(i + 1) +
                     " must satisfy lower < upper");
    }

    const ToleranceConfig& t = params.tolerances;
    if (!(t.geom_eps > 0.0)) fail("geom_eps must be positive");
    if (!(t.singular_det_eps > 0.0)) fail("singular_det_eps must be positive");
    if (!(t.residual_eps > 0.0)) fail("residual_eps must be positive");
    if (!(t.iter_max > 0)) fail("iter_max must be positive");

    return report;
}

bool is_canonical_style(const DesignParameters& params) {
    if (!validate(params).ok()) return false;
    const double tol = params.tolerances.geom_eps * std::max(params.leg_length, 1.0);
    for (int i = 1; i < 3; ++i)
        if ((params.rail_anchors[i] - params.rail_anchors[0]).norm() > tol)
            return false;
    return true;
}

IsotropicConfiguration isotropic_configuration(const DesignParameters& params) {
    if (!is_canonical_style(params))
        throw Error("isotropic configuration requires a valid canonical-style design "
                    "(orthonormal axes, coincident anchors)");
    IsotropicConfiguration iso;
    iso.point = CartesianPoint(params.rail_anchors[0]);
    for (int i = 0; i < 3; ++i)
        iso.joints[i] = params.branch_signs[i] * params.leg_length;
    return iso;
}

namespace {

using nlohmann::json;

Vec3 parse_vec3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(what + " must be an array of 3 numbers");
    for (const auto& v : j)
        if (!v.is_number()) throw ConfigError(what + " must contain numbers only");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::array<Vec3, 3> parse_triple(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(what + " must be a 3x3 array");
    return {parse_vec3(j[0], what + "[0]"), parse_vec3(j[1], what + "[1]"),
            parse_vec3(j[2], what + "[2]")};
}

}  // namespace

DesignParameters parse_design(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("machine definition is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("machine definition must be a JSON object");

    static const char* known[] = {"leg_length", "rail_axes", "rail_anchors",
                                  "branch_signs", "joint_limits", "tolerances"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("unknown machine definition key: " + it.key());
    }

    DesignParameters p;
    if (j.contains("leg_length")) {
        if (!j["leg_length"].is_number())
            throw ConfigError("leg_length must be a number");
        p.leg_length = j["leg_length"].get<double>();
    }
    if (j.contains("rail_axes")) p.rail_axes = parse_triple(j["rail_axes"], "rail_axes");
    if (j.contains("rail_anchors"))
        p.rail_anchors = parse_triple(j["rail_anchors"], "rail_anchors");
    if (j.contains("branch_signs")) {
        const json& s = j["branch_signs"];
        if (!s.is_array() || s.size() != 3)
            throw ConfigError("branch_signs must be an array of 3 integers");
        for (int i = 0; i < 3; ++i) {
            if (!s[i].is_number_integer())
                throw ConfigError("branch_signs must contain integers");
            p.branch_signs[i] = s[i].get<int>();
        }
    }
    if (j.contains("joint_limits") && !j["joint_limits"].is_null()) {
        const json& lim = j["joint_limits"];
        if (!lim.is_array() || lim.size() != 3)
            throw ConfigError("joint_limits must be an array of 3 [lo,hi] pairs");
        JointLimits jl;
        for (int i = 0; i < 3; ++i) {
            if (!lim[i].is_array() || lim[i].size() != 2 ||
                !lim[i][0].is_number() || !lim[i][1].is_number())
                throw ConfigError("joint_limits entries must be [lo,hi] number pairs");
            jl.lower[i] = lim[i][0].get<double>();
            jl.upper[i] = lim[i][1].get<double>();
        }
        p.joint_limits = jl;
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) throw ConfigError("tolerances must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            const std::string& k = it.key();
            if (k == "geom_eps") p.tolerances.geom_eps = it->get<double>();
            else if (k == "singular_det_eps") p.tolerances.singular_det_eps = it->get<double>();
            else if (k == "residual_eps") p.tolerances.residual_eps = it->get<double>();
            else if (k == "iter_max") p.tolerances.iter_max = it->get<int>();
            else throw ConfigError("unknown tolerances key: " + k);
        }
    }

    ValidationReport report = validate(p);
    if (!report.ok()) {
        std::ostringstream oss;
        oss << "invalid machine definition:";
        for (const auto& v : report.violations) oss << "\n  - " << v;
        throw ConfigError(oss.str());
    }
    return p;
}

DesignParameters load_design(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open machine definition file: " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return parse_design(oss.str());
}

std::string design_to_json(const DesignParameters& p) {
    nlohmann::ordered_json j;
    j["leg_length"] = p.leg_length;
    for (int i = 0; i < 3; ++i) {
        j["rail_axes"][i] = {p.rail_axes[i].x, p.rail_axes[i].y, p.rail_axes[i].z};
        j["rail_anchors"][i] = {p.rail_anchors[i].x, p.rail_anchors[i].y, p.rail_anchors[i].z};
    }
    j["branch_signs"] = {p.branch_signs[0], p.branch_signs[1], p.branch_signs[2]};
    if (p.joint_limits) {
        for (int i = 0; i < 3; ++i)
            j["joint_limits"][i] = {p.joint_limits->lower[i], p.joint_limits->upper[i]};
    } else {
        j["joint_limits"] = nullptr;
    }
    j["tolerances"] = {{"geom_eps", p.tolerances.geom_eps},
                       {"singular_det_eps", p.tolerances.singular_det_eps},
                       {"residual_eps", p.tolerances.residual_eps},
                       {"iter_max", p.tolerances.iter_max}};
    return j.dump(2) + "\n";
}

}  // namespace orthokin
