#include "orthokin/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "orthokin/errors.hpp"

namespace orthokin {

std::optional<IkSolution> try_inverse_kinematics(const CartesianPoint& p,
                                                 const DesignParameters& params,
                                                 int* unreachable_leg) {
    const double L = params.leg_length;
    const double disc_tol = params.tolerances.residual_eps * L;

    IkSolution sol;
    for (int i = 0; i < 3; ++i) {
        const Vec3 q = p - params.rail_anchors[i];
        const double along = q.dot(params.rail_axes[i]);
        const double r2 = q.norm_squared() - along * along;
        double disc = L * L - r2;
        if (disc < -disc_tol) {
            if (unreachable_leg) *unreachable_leg = i + 1;
            return std::nullopt;
        }
        disc = std::max(disc, 0.0);
        const double root = std::sqrt(disc);

        sol.rho[i] = along + params.branch_signs[i] * root;
        sol.boundary_flags[i] = disc <= disc_tol;

        LegState& leg = sol.legs[i];
        leg.a = params.rail_anchors[i];
        leg.b = leg.a + params.rail_axes[i] * sol.rho[i];
        leg.c = p;
        leg.eta = (leg.c - leg.b).dot(params.rail_axes[i]);
    }
    return sol;
}

IkSolution inverse_kinematics(const CartesianPoint& p, const DesignParameters& params) {
    int leg = 0;
    auto sol = try_inverse_kinematics(p, params, &leg);
    if (!sol) throw UnreachableError(leg);
    return *sol;
}

Vec3 loop_closure_residual(const CartesianPoint& p, const JointVector& rho,
                           const DesignParameters& params) {
    Vec3 res;
    for (int i = 0; i < 3; ++i) {
        const Vec3 b = params.rail_anchors[i] + params.rail_axes[i] * rho[i];
        res[i] = (p - b).norm() - params.leg_length;
    }
    return res;
}

namespace {

// Candidate assembly matches rho when its inverse kinematics reproduces the
// joint coordinates under the design's branch signs.
bool branch_match(const CartesianPoint& p, const JointVector& rho,
                  const DesignParameters& params) {
    auto ik = try_inverse_kinematics(p, params);
    if (!ik) return false;
    const double tol = 1e-6 * std::max(params.leg_length, rho.max_abs());
    return (ik->rho - rho).max_abs() <= tol;
}

Vec3 anchor_centroid(const DesignParameters& params) {
    return (params.rail_anchors[0] + params.rail_anchors[1] + params.rail_anchors[2]) / 3.0;
}

// Closed form for canonical-style designs: in rail coordinates u relative to
// the common anchor, each leg gives ||u||^2 - 2 rho_i u_i + rho_i^2 = L^2, so
// u_i = (t + rho_i^2 - L^2) / (2 rho_i) with t = ||u||^2. Substituting back
// yields a quadratic in t; each real root is one assembly mode.
std::optional<CartesianPoint> fk_closed_form(const JointVector& rho,
                                             const DesignParameters& params,
                                             FkInfo& info) {
    const double L = params.leg_length;
    double s2 = 0.0, s1 = 0.0, s0 = 0.0;
    double d[3];
    for (int i = 0; i < 3; ++i) {
        d[i] = rho[i] * rho[i] - L * L;
        const double inv = 1.0 / (2.0 * rho[i]);
        s2 += inv * inv;
        s1 += d[i] * inv * inv * 2.0;
        s0 += d[i] * d[i] * inv * inv;
    }
    const double b = s1 - 1.0;
    double disc = b * b - 4.0 * s2 * s0;
    const double disc_scale = std::max(b * b, std::abs(4.0 * s2 * s0));
    if (disc < -1e-12 * disc_scale)
        throw NoAssemblyError("leg spheres do not intersect");
    disc = std::max(disc, 0.0);

    const double sq = std::sqrt(disc);
    const double q = b >= 0.0 ? -0.5 * (b + sq) : -0.5 * (b - sq);
    double roots[2];
    int nroots = 0;
    roots[nroots++] = q / s2;
    if (q != 0.0) roots[nroots++] = s0 / q;

    const Vec3 anchor = anchor_centroid(params);
    std::optional<CartesianPoint> best;
    double best_t = 0.0;
    for (int r = 0; r < nroots; ++r) {
        double t = roots[r];
        if (t < -1e-12 * L * L) continue;
        t = std::max(t, 0.0);
        Vec3 u;
        for (int i = 0; i < 3; ++i) u[i] = (t + d[i]) / (2.0 * rho[i]);
        CartesianPoint p(anchor + params.rail_axes[0] * u.x +
                         params.rail_axes[1] * u.y + params.rail_axes[2] * u.z);
        if (!branch_match(p, rho, params)) continue;
        if (!best) {
            best = p;
            best_t = t;
        } else if ((p - *best).norm() > 1e-9 * L) {
            // two distinct assemblies in the same working mode; keep the one
            // closer to the anchor (smaller t), which is the roundtrip root
            info.degenerate = true;
            if (t < best_t) {
                best = p;
                best_t = t;
            }
        }
    }
    return best;
}

// Levenberg-Marquardt on the squared sphere residuals, for configurations the
// closed form cannot handle (some rho_i ~ 0, or non-coincident anchors). The
// damping also covers rank-deficient cases such as coincident slider points.
std::optional<CartesianPoint> fk_newton(const JointVector& rho,
                                        const DesignParameters& params, FkInfo& info) {
    info.used_newton = true;
    const double L = params.leg_length;
    Vec3 centers[3];
    for (int i = 0; i < 3; ++i)
        centers[i] = params.rail_anchors[i] + params.rail_axes[i] * rho[i];

    const Vec3 centroid = (centers[0] + centers[1] + centers[2]) / 3.0;
    Vec3 seeds[3] = {anchor_centroid(params), centroid + Vec3{0.317, 0.241, 0.193} * L,
                     centroid - Vec3{0.203, 0.311, 0.157} * L};

    auto sq_residual = [&](const Vec3& p, Vec3& g) {
        double sum = 0.0;
        for (int i = 0; i < 3; ++i) {
            g[i] = (p - centers[i]).norm_squared() - L * L;
            sum += g[i] * g[i];
        }
        return sum;
    };

    std::optional<Vec3> solution;
    for (const Vec3& seed : seeds) {
        Vec3 p = seed;
        Vec3 g;
        double f = sq_residual(p, g);
        double damping = 1e-6 * L * L;
        for (int it = 0; it < params.tolerances.iter_max; ++it) {
            Mat3 jac;
            for (int i = 0; i < 3; ++i) jac.rows[i] = (p - centers[i]) * 2.0;
            const Mat3 jtj = jac.transposed() * jac;
            const Vec3 jtg = jac.transposed() * g;
            bool improved = false;
            for (int attempt = 0; attempt < 25 && !improved; ++attempt) {
                Mat3 lhs = jtj;
                for (int d = 0; d < 3; ++d) lhs(d, d) += damping;
                Vec3 step;
                if (!solve3(lhs, jtg, step)) {
                    damping = std::max(damping * 10.0, 1e-12 * L * L);
                    continue;
                }
                Vec3 gt;
                const Vec3 trial = p - step;
                const double ft = sq_residual(trial, gt);
                if (ft < f) {
                    p = trial;
                    g = gt;
                    f = ft;
                    damping = std::max(damping * 0.25, 1e-14 * L * L);
                    improved = true;
                } else {
                    damping *= 10.0;
                }
            }
            if (!improved || f < 1e-30 * L * L * L * L) break;
        }
        Vec3 final_res = loop_closure_residual(CartesianPoint(p), rho, params);
        if (final_res.max_abs() <= params.tolerances.residual_eps) {
            solution = p;
            break;
        }
    }
    if (!solution) return std::nullopt;

    // The two assembly modes are mirror images through the plane of the
    // sphere centers; the mirror preserves the distances to all centers.
    Vec3 n = (centers[1] - centers[0]).cross(centers[2] - centers[0]);
    std::optional<CartesianPoint> candidates[2];
    candidates[0] = CartesianPoint(*solution);
    if (n.norm() > 1e-12 * L * L) {
        const Vec3 nh = n.normalized();
        candidates[1] =
            CartesianPoint(*solution - nh * (2.0 * (*solution - centers[0]).dot(nh)));
    } else {
        // collinear centers: the intersection is a circle, any point of which
        // is a valid assembly
        info.degenerate = true;
    }

    const Vec3 anchor = anchor_centroid(params);
    std::optional<CartesianPoint> best;
    for (const auto& cand : candidates) {
        if (!cand || !branch_match(*cand, rho, params)) continue;
        if (!best) {
            best = cand;
        } else if ((*cand - *best).norm() > 1e-9 * L) {
            info.degenerate = true;
            if ((*cand - anchor).norm_squared() < (*best - anchor).norm_squared())
                best = cand;
        }
    }
    return best;
}

}  // namespace

CartesianPoint forward_kinematics(const JointVector& rho, const DesignParameters& params,
                                  FkInfo* info) {
    FkInfo local;
    FkInfo& fi = info ? *info : local;
    fi = FkInfo{};

    const double rho_guard = params.tolerances.geom_eps * params.leg_length;
    const bool closed_form_ok =
        is_canonical_style(params) &&
        std::min({std::abs(rho.x), std::abs(rho.y), std::abs(rho.z)}) > rho_guard;

    std::optional<CartesianPoint> p;
    if (closed_form_ok) p = fk_closed_form(rho, params, fi);
    if (!p) p = fk_newton(rho, params, fi);
    if (!p)
        throw NoAssemblyError(
            "joint coordinates admit no assembly in the design's working mode");
    return *p;
}

}  // namespace orthokin
