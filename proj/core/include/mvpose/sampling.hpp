#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mvpose/camera.hpp"
#include "mvpose/mesh.hpp"
#include "mvpose/pose.hpp"
#include "mvpose/random.hpp"
#include "mvpose/standardization.hpp"

namespace mvpose {

struct DepthRange {
    double z_min = 0.5;
    double z_max = 1.5;
};

/// Uniform rotation from three uniform variates (Shoemake's subgroup construction).
UnitQuaternion sample_uniform_rotation(Rng& rng);

/// Uniform direction on the unit sphere.
Vec3 sample_unit_vector(Rng& rng);

/// Uniform rotation, depth uniform in range, and a translation whose projection falls in
/// the central 80% of the viewport. The range is narrowed further by the projected object
/// radius when that still leaves room, so the object stays fully in view.
Pose sample_pose_in_frustum(const CameraIntrinsics& cam, const DepthRange& depth, const TriangleMesh& mesh, Rng& rng);

/// Composes a random-axis rotation with angle uniform in [0, max_angle_deg] and offsets the
/// translation uniformly inside the L-infinity ball of radius max_trans_m.
Pose perturb_pose(const Pose& p, double max_angle_deg, double max_trans_m, Rng& rng);

struct RestartSampling {
    double max_error_deg = 25.0;    ///< estimates worse than this are replaced
    double small_angle_deg = 10.0;  ///< rotation bound for the replacement sample
    double small_trans_m = 0.01;
};

/// Training-time start pose for the refiner: the initial estimate itself, or a small random
/// perturbation of the truth if the estimate is more than max_error_deg off.
Pose select_refinement_start(const Pose& initial_estimate, const Pose& truth, Rng& rng,
                             const RestartSampling& cfg = {});

/// 7-vectors (relative quaternion | untangled delta) for seeded relative poses: frustum pose
/// as target, a perturbation of it (25 deg, 2 cm) as the rendered hypothesis.
std::vector<ParamVector> relative_pose_pool(const CameraIntrinsics& cam, const DepthRange& depth,
                                            const TriangleMesh& mesh, std::size_t n, std::uint64_t seed);

}  // namespace mvpose
