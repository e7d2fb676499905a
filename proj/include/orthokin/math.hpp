#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace orthokin {

struct Vec3 {
    double x{0.0}, y{0.0}, z{0.0};

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm_squared() const { return dot(*this); }
    double norm() const { return std::sqrt(norm_squared()); }
    Vec3 normalized() const { return *this / norm(); }
    double max_abs() const {
        return std::max({std::abs(x), std::abs(y), std::abs(z)});
    }
    bool all_finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    static Vec3 unit(int axis) {
        Vec3 v;
        v[axis] = 1.0;
        return v;
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// 3x3 matrix stored as rows.
struct Mat3 {
    std::array<Vec3, 3> rows{};

    double operator()(int i, int j) const { return rows[i][j]; }
    double& operator()(int i, int j) { return rows[i][j]; }

    const Vec3& row(int i) const { return rows[i]; }
    Vec3 col(int j) const { return {rows[0][j], rows[1][j], rows[2][j]}; }
    void set_col(int j, const Vec3& v) {
        rows[0][j] = v.x;
        rows[1][j] = v.y;
        rows[2][j] = v.z;
    }

    static Mat3 identity() {
        return {{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}};
    }
    static Mat3 diagonal(const Vec3& d) {
        return {{Vec3{d.x, 0, 0}, Vec3{0, d.y, 0}, Vec3{0, 0, d.z}}};
    }
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
        return {{r0, r1, r2}};
    }

    Vec3 operator*(const Vec3& v) const {
        return {rows[0].dot(v), rows[1].dot(v), rows[2].dot(v)};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = rows[i].dot(o.col(j));
        return r;
    }
    Mat3 operator+(const Mat3& o) const {
        return {{rows[0] + o.rows[0], rows[1] + o.rows[1], rows[2] + o.rows[2]}};
    }
    Mat3 operator-(const Mat3& o) const {
        return {{rows[0] - o.rows[0], rows[1] - o.rows[1], rows[2] - o.rows[2]}};
    }
    Mat3 operator*(double s) const {
        return {{rows[0] * s, rows[1] * s, rows[2] * s}};
    }

    Mat3 transposed() const {
        return {{col(0), col(1), col(2)}};
    }
    double determinant() const {
        return rows[0].dot(rows[1].cross(rows[2]));
    }
    double trace() const { return rows[0].x + rows[1].y + rows[2].z; }
    double max_abs() const {
        return std::max({rows[0].max_abs(), rows[1].max_abs(), rows[2].max_abs()});
    }
    bool all_finite() const {
        return rows[0].all_finite() && rows[1].all_finite() && rows[2].all_finite();
    }
};

// Solves M x = b by Gaussian elimination with partial pivoting.
// Returns false when a pivot vanishes (singular to machine precision).
inline bool solve3(const Mat3& m, const Vec3& b, Vec3& x) {
    double a[3][4] = {
        {m(0, 0), m(0, 1), m(0, 2), b.x},
        {m(1, 0), m(1, 1), m(1, 2), b.y},
        {m(2, 0), m(2, 1), m(2, 2), b.z},
    };
    for (int k = 0; k < 3; ++k) {
        int piv = k;
        for (int i = k + 1; i < 3; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (a[piv][k] == 0.0) return false;
        if (piv != k)
            for (int j = k; j < 4; ++j) std::swap(a[k][j], a[piv][j]);
        for (int i = k + 1; i < 3; ++i) {
            const double f = a[i][k] / a[k][k];
            for (int j = k; j < 4; ++j) a[i][j] -= f * a[k][j];
        }
    }
    for (int i = 2; i >= 0; --i) {
        double s = a[i][3];
        for (int j = i + 1; j < 3; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x.all_finite();
}

// Solves M X = B column-wise; false when M is singular.
inline bool solve3(const Mat3& m, const Mat3& b, Mat3& x) {
    for (int j = 0; j < 3; ++j) {
        Vec3 xj;
        if (!solve3(m, b.col(j), xj)) return false;
        x.set_col(j, xj);
    }
    return true;
}

}  // namespace orthokin
