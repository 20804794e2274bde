#pragma once

#include <array>

#include "mvpose/camera.hpp"
#include "mvpose/quaternion.hpp"
#include "mvpose/vec3.hpp"

namespace mvpose {

/// Object pose in the camera frame: x_cam = rotation * x_obj + translation (meters, +z forward).
struct Pose {
    UnitQuaternion rotation;
    Vec3 translation;

    Vec3 transform(const Vec3& p) const { return rotation.rotate(p) + translation; }
    bool operator==(const Pose&) const = default;
};

/// Relative translation between two poses that does not depend on the object frame:
/// image-plane offset of the projected origin (pixels) and log depth ratio.
struct UntangledDelta {
    double vx = 0.0;
    double vy = 0.0;
    double vz = 0.0;

    Vec3 as_vec3() const { return {vx, vy, vz}; }
    static UntangledDelta from_vec3(const Vec3& v) { return {v.x, v.y, v.z}; }
    bool operator==(const UntangledDelta&) const = default;
};

/// Relative rotation taking src to tgt in the camera frame: tgt.rotation = delta * src.rotation.
UnitQuaternion relative_rotation(const Pose& src, const Pose& tgt);

/// vx = fx (tgt.x/tgt.z - src.x/src.z), vy likewise, vz = ln(src.z / tgt.z).
/// Throws Error(NonPositiveDepth) unless both depths are > 0.
UntangledDelta untangle(const Pose& src, const Pose& tgt, const CameraIntrinsics& cam);

/// Translation reached from src by applying an untangled delta.
Vec3 entangle_translation(const Vec3& src, const UntangledDelta& delta, const CameraIntrinsics& cam);

/// Applies a relative pose to src. Inverse of (relative_rotation, untangle).
Pose entangle(const Pose& src, const UnitQuaternion& delta_rot, const UntangledDelta& delta_t,
              const CameraIntrinsics& cam);

/// Packs (quaternion w,x,y,z | vx, vy, vz) into the 7-vector used for standardization.
std::array<double, 7> pack_relative_pose(const RawQuaternion& q, const UntangledDelta& v);

}  // namespace mvpose
