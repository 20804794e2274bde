#pragma once

// Reference computations used by the tests. They deliberately avoid the library's
// quaternion and loss code paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "mvpose/metrics.hpp"
#include "mvpose/quaternion.hpp"
#include "mvpose/vec3.hpp"

namespace oracle {

using Mat3 = std::array<std::array<double, 3>, 3>;

constexpr double kPi = 3.14159265358979323846;

// Rodrigues' formula.
inline Mat3 axis_angle_matrix(mvpose::Vec3 axis, double angle_rad) {
    const double n = std::sqrt(axis.x * axis.x + axis.y * axis.y + axis.z * axis.z);
    const double x = axis.x / n, y = axis.y / n, z = axis.z / n;
    const double c = std::cos(angle_rad), s = std::sin(angle_rad), C = 1 - c;
    return {{{c + x * x * C, x * y * C - z * s, x * z * C + y * s},
             {y * x * C + z * s, c + y * y * C, y * z * C - x * s},
             {z * x * C - y * s, z * y * C + x * s, c + z * z * C}}};
}

// Rotation matrix of a unit quaternion, written out from the standard formula.
inline Mat3 quat_matrix(double w, double x, double y, double z) {
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

inline Mat3 quat_matrix(const mvpose::UnitQuaternion& q) { return quat_matrix(q.w(), q.x(), q.y(), q.z()); }

inline Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline mvpose::Vec3 apply(const Mat3& m, const mvpose::Vec3& v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
    double d = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
    return d;
}

// Angle between two rotation matrices from the trace of R_a^T R_b, in degrees.
inline double matrix_angle_deg(const Mat3& a, const Mat3& b) {
    double tr = 0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) tr += a[k][i] * b[k][i];
    const double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
    return std::acos(c) * 180.0 / kPi;
}

// CDF of the rotation angle of a uniformly random rotation.
inline double so3_angle_cdf(double theta_rad) { return (theta_rad - std::sin(theta_rad)) / kPi; }

// Inverse of so3_angle_cdf by bisection.
inline double so3_angle_quantile(double p) {
    double lo = 0.0, hi = kPi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (so3_angle_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Central finite-difference gradient of f at x.
inline std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                              std::vector<double> x, double h) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double orig = x[i];
        x[i] = orig + h;
        const double fp = f(x);
        x[i] = orig - h;
        const double fm = f(x);
        x[i] = orig;
        g[i] = (fp - fm) / (2 * h);
    }
    return g;
}

// Loss functions transcribed directly from their defining formulas.
inline double reference_loss(const std::array<double, 4>& q, const std::array<double, 3>& t, const std::vector<double>& x,
                             bool with_theta, double theta, int n_views) {
    const double qn = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    double d = 0;
    for (int i = 0; i < 4; ++i) d += q[i] * x[i] / qn;
    const double dt = std::sqrt((t[0] - x[4]) * (t[0] - x[4]) + (t[1] - x[5]) * (t[1] - x[5]) + (t[2] - x[6]) * (t[2] - x[6]));
    double sum = std::abs(1 - d) + dt + std::abs(1 - qn);
    if (with_theta) return sum + std::abs(theta - x[7]);
    return sum / n_views;
}

// Brute-force (n deg, n cm) recount.
inline double brute_force_accuracy(const std::vector<mvpose::PoseError>& errors, double n) {
    int correct = 0;
    for (const auto& e : errors) {
        if (e.rot_deg < n) {
            if (e.trans_cm < n) ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(errors.size());
}

}  // namespace oracle
