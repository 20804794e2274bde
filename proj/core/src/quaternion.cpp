#include "mvpose/quaternion.hpp"

#include <algorithm>
#include <cmath>

#include "mvpose/error.hpp"

namespace mvpose {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ZeroNormQuaternion: return "ZeroNormQuaternion";
        case ErrorCode::NonPositiveDepth: return "NonPositiveDepth";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::BBoxLargerThanImage: return "BBoxLargerThanImage";
        case ErrorCode::BBoxOutOfBounds: return "BBoxOutOfBounds";
        case ErrorCode::EmptyMask: return "EmptyMask";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnsupportedElement: return "UnsupportedElement";
        case ErrorCode::ObjectBehindCamera: return "ObjectBehindCamera";
        case ErrorCode::MissingSceneHandle: return "MissingSceneHandle";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

double RawQuaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

UnitQuaternion UnitQuaternion::from_raw(const RawQuaternion& q) {
    const double n = q.norm();
    if (!(n >= 1e-12) || !std::isfinite(n)) {
        throw Error(ErrorCode::ZeroNormQuaternion, "quaternion norm " + std::to_string(n));
    }
    return {q.w / n, q.x / n, q.y / n, q.z / n};
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Vec3& axis, double angle_rad) {
    const double n = axis.norm();
    if (n == 0.0) return identity();
    const double h = 0.5 * angle_rad;
    const double s = std::sin(h) / n;
    return {std::cos(h), axis.x * s, axis.y * s, axis.z * s};
}

UnitQuaternion UnitQuaternion::from_axis_angle_deg(const Vec3& axis, double angle_deg) {
    return from_axis_angle(axis, deg_to_rad(angle_deg));
}

UnitQuaternion UnitQuaternion::conjugate() const { return {w_, -x_, -y_, -z_}; }

UnitQuaternion UnitQuaternion::operator-() const { return {-w_, -x_, -y_, -z_}; }

Vec3 UnitQuaternion::rotate(const Vec3& v) const {
    // v' = v + 2w(u x v) + 2 u x (u x v)
    const Vec3 u{x_, y_, z_};
    const Vec3 t = 2.0 * cross(u, v);
    return v + w_ * t + cross(u, t);
}

double UnitQuaternion::angle_deg() const {
    return rad_to_deg(2.0 * std::atan2(vec().norm(), std::abs(w_)));
}

Vec3 UnitQuaternion::axis() const {
    const Vec3 v = vec();
    const double n = v.norm();
    if (n == 0.0) return {1.0, 0.0, 0.0};
    return (w_ < 0.0 ? -v : v) / n;
}

UnitQuaternion quat_normalize(const RawQuaternion& q) { return UnitQuaternion::from_raw(q); }

UnitQuaternion compose(const UnitQuaternion& a, const UnitQuaternion& b) {
    const RawQuaternion p{
        a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_,
        a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_,
        a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_,
        a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_};
    return UnitQuaternion::from_raw(p);
}

double dot(const UnitQuaternion& a, const UnitQuaternion& b) {
    return a.w() * b.w() + a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

double quat_angle_deg(const UnitQuaternion& a, const UnitQuaternion& b) {
    // Same value as 2 acos(min(1, |<a, b>|)), evaluated through the relative rotation so
    // that it stays accurate for nearly identical rotations.
    // vec(a^-1 b) = wa vb - wb va - va x vb, grouped so identical inputs give exactly 0.
    const Vec3 va = a.vec(), vb = b.vec();
    const Vec3 v = (a.w() * vb - b.w() * va) - cross(va, vb);
    const double w = a.w() * b.w() + dot(va, vb);
    return rad_to_deg(2.0 * std::atan2(v.norm(), std::abs(w)));
}

UnitQuaternion slerp(const UnitQuaternion& a, const UnitQuaternion& b, double s) {
    const UnitQuaternion bb = dot(a, b) < 0.0 ? -b : b;
    const UnitQuaternion rel = compose(a.conjugate(), bb);  // w >= 0 up to rounding
    const double half = std::atan2(rel.vec().norm(), rel.w());
    if (half == 0.0) return a;
    return compose(a, UnitQuaternion::from_axis_angle(rel.vec(), 2.0 * half * s));
}

}  // namespace mvpose
