#pragma once

#include <array>

#include "mvpose/vec3.hpp"

namespace mvpose {

/// Quaternion of arbitrary norm, as produced by an estimator before normalization.
/// Hamilton convention, scalar first.
struct RawQuaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    std::array<double, 4> as_array() const { return {w, x, y, z}; }
    bool operator==(const RawQuaternion&) const = default;
};

/// Unit quaternion representing a rotation acting on camera-frame vectors.
///
/// q and -q are the same rotation. Components are kept exactly as produced (no sign
/// canonicalization), so compare rotations with angle_deg() rather than operator==.
class UnitQuaternion {
public:
    /// Identity rotation.
    constexpr UnitQuaternion() = default;

    static constexpr UnitQuaternion identity() { return {}; }

    /// Normalizes; throws Error(ZeroNormQuaternion) if the norm is below 1e-12.
    static UnitQuaternion from_raw(const RawQuaternion& q);
    static UnitQuaternion from_components(double w, double x, double y, double z) {
        return from_raw({w, x, y, z});
    }
    /// Rotation by `angle_rad` about `axis` (need not be unit length; zero axis gives identity).
    static UnitQuaternion from_axis_angle(const Vec3& axis, double angle_rad);
    static UnitQuaternion from_axis_angle_deg(const Vec3& axis, double angle_deg);

    double w() const { return w_; }
    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }
    Vec3 vec() const { return {x_, y_, z_}; }

    RawQuaternion raw() const { return {w_, x_, y_, z_}; }
    std::array<double, 4> as_array() const { return {w_, x_, y_, z_}; }

    UnitQuaternion conjugate() const;
    UnitQuaternion inverse() const { return conjugate(); }
    UnitQuaternion operator-() const;

    Vec3 rotate(const Vec3& v) const;

    /// Rotation angle in [0, 180] degrees.
    double angle_deg() const;
    /// Unit rotation axis; (1,0,0) for the identity.
    Vec3 axis() const;

    bool operator==(const UnitQuaternion&) const = default;

private:
    constexpr UnitQuaternion(double w, double x, double y, double z) : w_(w), x_(x), y_(y), z_(z) {}

    double w_ = 1.0;
    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 0.0;

    friend UnitQuaternion compose(const UnitQuaternion& a, const UnitQuaternion& b);
};

UnitQuaternion quat_normalize(const RawQuaternion& q);

/// Hamilton product a·b, renormalized: applies b first, then a.
UnitQuaternion compose(const UnitQuaternion& a, const UnitQuaternion& b);

/// Geodesic angle between two rotations in degrees, [0, 180]; invariant to q -> -q.
double quat_angle_deg(const UnitQuaternion& a, const UnitQuaternion& b);

/// Shortest-arc spherical interpolation; s=0 gives a, s=1 gives b up to sign.
UnitQuaternion slerp(const UnitQuaternion& a, const UnitQuaternion& b, double s);

double dot(const UnitQuaternion& a, const UnitQuaternion& b);

constexpr double kPi = 3.14159265358979323846;
constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace mvpose
