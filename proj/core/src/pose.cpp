#include "mvpose/pose.hpp"

#include <cmath>
#include <string>

#include "mvpose/error.hpp"

namespace mvpose {

namespace {

void require_positive_depth(double z, const char* what) {
    if (!(z > 0.0)) {
        throw Error(ErrorCode::NonPositiveDepth, std::string(what) + " depth " + std::to_string(z));
    }
}

}  // namespace

UnitQuaternion relative_rotation(const Pose& src, const Pose& tgt) {
    return compose(tgt.rotation, src.rotation.conjugate());
}

UntangledDelta untangle(const Pose& src, const Pose& tgt, const CameraIntrinsics& cam) {
    const Vec3& s = src.translation;
    const Vec3& t = tgt.translation;
    require_positive_depth(s.z, "source");
    require_positive_depth(t.z, "target");
    return {cam.fx * (t.x / t.z - s.x / s.z), cam.fy * (t.y / t.z - s.y / s.z), std::log(s.z / t.z)};
}

Vec3 entangle_translation(const Vec3& src, const UntangledDelta& delta, const CameraIntrinsics& cam) {
    require_positive_depth(src.z, "source");
    const double z = src.z * std::exp(-delta.vz);
    return {(delta.vx / cam.fx + src.x / src.z) * z, (delta.vy / cam.fy + src.y / src.z) * z, z};
}

Pose entangle(const Pose& src, const UnitQuaternion& delta_rot, const UntangledDelta& delta_t,
              const CameraIntrinsics& cam) {
    return {compose(delta_rot, src.rotation), entangle_translation(src.translation, delta_t, cam)};
}

std::array<double, 7> pack_relative_pose(const RawQuaternion& q, const UntangledDelta& v) {
    return {q.w, q.x, q.y, q.z, v.vx, v.vy, v.vz};
}

}  // namespace mvpose
