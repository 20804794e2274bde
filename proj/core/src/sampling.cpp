#include "mvpose/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "mvpose/error.hpp"

namespace mvpose {

UnitQuaternion sample_uniform_rotation(Rng& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double u3 = rng.uniform();
    const double a = std::sqrt(1.0 - u1);
    const double b = std::sqrt(u1);
    const double t2 = 2.0 * kPi * u2;
    const double t3 = 2.0 * kPi * u3;
    return UnitQuaternion::from_components(b * std::cos(t3), a * std::sin(t2), a * std::cos(t2), b * std::sin(t3));
}

Vec3 sample_unit_vector(Rng& rng) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

Pose sample_pose_in_frustum(const CameraIntrinsics& cam, const DepthRange& depth, const TriangleMesh& mesh, Rng& rng) {
    if (!(depth.z_min > 0.0) || depth.z_max < depth.z_min) {
        throw Error(ErrorCode::InvalidArgument, "depth range needs 0 < z_min <= z_max");
    }
    Pose p;
    p.rotation = sample_uniform_rotation(rng);
    const double z = rng.uniform(depth.z_min, depth.z_max);

    const double radius_u = cam.fx * 0.5 * mesh.diameter() / z;
    const double radius_v = cam.fy * 0.5 * mesh.diameter() / z;
    const auto range = [](double size, double radius) {
        double lo = 0.1 * size, hi = 0.9 * size;
        if (size - radius > radius) {
            lo = std::max(lo, radius);
            hi = std::min(hi, size - radius);
            if (hi < lo) lo = hi = 0.5 * size;
        }
        return std::array<double, 2>{lo, hi};
    };
    const auto ur = range(cam.width, radius_u);
    const auto vr = range(cam.height, radius_v);
    const double u = rng.uniform(ur[0], ur[1]);
    const double v = rng.uniform(vr[0], vr[1]);
    p.translation = cam.back_project({u, v}, z);
    return p;
}

Pose perturb_pose(const Pose& p, double max_angle_deg, double max_trans_m, Rng& rng) {
    if (max_angle_deg < 0.0 || max_trans_m < 0.0) throw Error(ErrorCode::InvalidArgument, "perturbation bounds must be >= 0");
    const double angle = rng.uniform(0.0, max_angle_deg);
    const Vec3 axis = sample_unit_vector(rng);
    const Vec3 offset{rng.uniform(-max_trans_m, max_trans_m), rng.uniform(-max_trans_m, max_trans_m),
                      rng.uniform(-max_trans_m, max_trans_m)};
    Pose out = p;
    if (angle != 0.0) out.rotation = compose(UnitQuaternion::from_axis_angle_deg(axis, angle), p.rotation);
    out.translation = p.translation + offset;
    return out;
}

Pose select_refinement_start(const Pose& initial_estimate, const Pose& truth, Rng& rng, const RestartSampling& cfg) {
    if (quat_angle_deg(initial_estimate.rotation, truth.rotation) > cfg.max_error_deg) {
        return perturb_pose(truth, cfg.small_angle_deg, cfg.small_trans_m, rng);
    }
    return initial_estimate;
}

std::vector<ParamVector> relative_pose_pool(const CameraIntrinsics& cam, const DepthRange& depth,
                                            const TriangleMesh& mesh, std::size_t n, std::uint64_t seed) {
    std::vector<ParamVector> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, {i}));
        const Pose target = sample_pose_in_frustum(cam, depth, mesh, rng);
        Pose rendered = perturb_pose(target, 25.0, 0.02, rng);
        rendered.translation.z = std::max(rendered.translation.z, 0.5 * depth.z_min);
        pool.push_back(pack_relative_pose(relative_rotation(rendered, target).raw(), untangle(rendered, target, cam)));
    }
    return pool;
}

}  // namespace mvpose
