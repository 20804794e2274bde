#pragma once

#include "mvpose/vec3.hpp"

namespace mvpose {

struct Point2 {
    double u = 0.0;
    double v = 0.0;
    bool operator==(const Point2&) const = default;
};

/// Pinhole intrinsics. Continuous pixel coordinates: pixel (i, j) covers
/// [i, i+1) x [j, j+1), so its center is (i + 0.5, j + 0.5).
struct CameraIntrinsics {
    double fx = 572.4114;
    double fy = 573.57043;
    double px = 325.2611;
    double py = 242.04899;
    int width = 640;
    int height = 480;

    /// Throws Error(InvalidArgument) when focal lengths or sensor size are not positive.
    void validate() const;

    Point2 project(const Vec3& p) const { return {fx * p.x / p.z + px, fy * p.y / p.z + py}; }

    /// Camera-frame point on the ray through pixel coordinate `uv` at depth `z`.
    Vec3 back_project(const Point2& uv, double z) const {
        return {(uv.u - px) / fx * z, (uv.v - py) / fy * z, z};
    }

    bool operator==(const CameraIntrinsics&) const = default;
};

/// The intrinsics commonly used with LINEMOD at 640x480.
inline CameraIntrinsics linemod_intrinsics() { return {}; }

}  // namespace mvpose
