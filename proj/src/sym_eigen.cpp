#include "orthokin/sym_eigen.hpp"

#include <algorithm>
#include <cmath>

namespace orthokin {

namespace {

constexpr double kTwoPiThirds = 2.0943951023931953;

Mat3 symmetrize(const Mat3& m) {
    Mat3 s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
    return s;
}

// Eigenvalues of a symmetric matrix scaled to unit magnitude, descending.
// Trigonometric solution of the characteristic cubic: shift by the mean
// eigenvalue q, normalize by p = sqrt(tr((A-qI)^2)/6), then the roots are
// q + 2p cos(phi + k 2pi/3).
std::array<double, 3> eigenvalues_scaled(const Mat3& a) {
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    const double q = a.trace() / 3.0;
    if (p1 == 0.0) {
        std::array<double, 3> v{a(0, 0), a(1, 1), a(2, 2)};
        std::sort(v.begin(), v.end(), std::greater<double>());
        return v;
    }
    const double d0 = a(0, 0) - q, d1 = a(1, 1) - q, d2 = a(2, 2) - q;
    const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 b = a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = (a(i, j) - (i == j ? q : 0.0)) / p;
    double r = b.determinant() / 2.0;
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;

    const double l0 = q + 2.0 * p * std::cos(phi);
    const double l2 = q + 2.0 * p * std::cos(phi + kTwoPiThirds);
    const double l1 = 3.0 * q - l0 - l2;
    return {l0, l1, l2};
}

// Unit eigenvector for an eigenvalue of multiplicity one: the rows of
// (A - lambda I) span the orthogonal complement, so the largest cross product
// of two rows points along the eigenvector.
bool eigenvector_simple(const Mat3& a, double lambda, Vec3& out) {
    Mat3 m = a;
    for (int i = 0; i < 3; ++i) m(i, i) -= lambda;
    const Vec3 c01 = m.row(0).cross(m.row(1));
    const Vec3 c02 = m.row(0).cross(m.row(2));
    const Vec3 c12 = m.row(1).cross(m.row(2));
    const double n01 = c01.norm_squared();
    const double n02 = c02.norm_squared();
    const double n12 = c12.norm_squared();
    double best = n01;
    Vec3 v = c01;
    if (n02 > best) {
        best = n02;
        v = c02;
    }
    if (n12 > best) {
        best = n12;
        v = c12;
    }
    if (best <= 1e-56) return false;  // rank deficiency: repeated eigenvalue
    out = v / std::sqrt(best);
    return true;
}

// Orthonormal basis {u, v} of the plane orthogonal to unit vector w.
void orthogonal_complement(const Vec3& w, Vec3& u, Vec3& v) {
    if (std::abs(w.x) > std::abs(w.y))
        u = Vec3{-w.z, 0.0, w.x} / std::sqrt(w.x * w.x + w.z * w.z);
    else
        u = Vec3{0.0, w.z, -w.y} / std::sqrt(w.y * w.y + w.z * w.z);
    v = w.cross(u);
}

// Eigenvector for eigenvalue lambda within the plane orthogonal to the known
// unit eigenvector w: project A - lambda I onto the plane and solve the 2x2
// nullspace. Degenerates gracefully to u when lambda is (near) repeated.
Vec3 eigenvector_in_complement(const Mat3& a, double lambda, const Vec3& w) {
    Vec3 u, v;
    orthogonal_complement(w, u, v);
    const Vec3 au = a * u;
    const Vec3 av = a * v;
    const double m00 = u.dot(au) - lambda;
    const double m01 = u.dot(av);
    const double m11 = v.dot(av) - lambda;
    const double r0 = m00 * m00 + m01 * m01;
    const double r1 = m01 * m01 + m11 * m11;
    if (r0 >= r1) {
        if (r0 <= 1e-56) return u;
        const double s = std::sqrt(r0);
        return u * (m01 / s) - v * (m00 / s);
    }
    if (r1 <= 1e-56) return u;
    const double s = std::sqrt(r1);
    return u * (m11 / s) - v * (m01 / s);
}

}  // namespace

std::array<double, 3> sym_eigenvalues3(const Mat3& m) {
    const Mat3 a0 = symmetrize(m);
    const double scale = a0.max_abs();
    if (scale == 0.0) return {0.0, 0.0, 0.0};
    const Mat3 a = a0 * (1.0 / scale);
    auto v = eigenvalues_scaled(a);
    return {v[0] * scale, v[1] * scale, v[2] * scale};
}

SymEigen3 sym_eigen3(const Mat3& m) {
    SymEigen3 out;
    const Mat3 a0 = symmetrize(m);
    const double scale = a0.max_abs();
    if (scale == 0.0) {
        out.vectors = Mat3::identity();
        return out;
    }
    const Mat3 a = a0 * (1.0 / scale);
    const auto vals = eigenvalues_scaled(a);

    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (p1 == 0.0) {
        // already diagonal: sort the basis vectors with the diagonal entries
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(),
                  [&](int i, int j) { return a(i, i) > a(j, j); });
        for (int k = 0; k < 3; ++k) {
            out.values[k] = a(idx[k], idx[k]) * scale;
            out.vectors.set_col(k, Vec3::unit(idx[k]));
        }
        return out;
    }

    // Extract the most isolated eigenvalue first; near-repeated pairs are then
    // resolved inside the 2D orthogonal complement.
    Vec3 v0, v1, v2;
    if (vals[0] - vals[1] >= vals[1] - vals[2]) {
        if (!eigenvector_simple(a, vals[0], v0)) v0 = Vec3{1, 0, 0};
        v1 = eigenvector_in_complement(a, vals[1], v0);
        v2 = v0.cross(v1);
    } else {
        if (!eigenvector_simple(a, vals[2], v2)) v2 = Vec3{0, 0, 1};
        v1 = eigenvector_in_complement(a, vals[1], v2);
        v0 = v1.cross(v2);
    }

    for (int k = 0; k < 3; ++k) out.values[k] = vals[k] * scale;
    out.vectors.set_col(0, v0);
    out.vectors.set_col(1, v1);
    out.vectors.set_col(2, v2);
    return out;
}

}  // namespace orthokin
