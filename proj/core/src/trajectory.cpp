#include "mvpose/trajectory.hpp"

#include <algorithm>

#include "mvpose/error.hpp"

namespace mvpose {

Trajectory generate_trajectory(const Pose& start, const TrajectorySpec& spec, const CameraIntrinsics& cam,
                               const TriangleMesh& mesh, Rng& rng) {
    if (spec.n_frames < 1) throw Error(ErrorCode::InvalidArgument, "trajectory needs n_frames >= 1");
    if (spec.max_step_deg < 0.0 || spec.max_step_m < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "trajectory step bounds must be >= 0");
    }

    Trajectory traj;
    traj.max_step_deg = spec.max_step_deg;
    traj.max_step_m = spec.max_step_m;
    traj.poses.reserve(static_cast<std::size_t>(spec.n_frames));
    traj.poses.push_back(start);
    traj.discontinuity.push_back(false);

    UnitQuaternion rot_waypoint = start.rotation;
    Vec3 trans_waypoint = start.translation;
    for (int f = 1; f < spec.n_frames; ++f) {
        const Pose& prev = traj.poses.back();
        Pose next = prev;

        const auto jump = std::find_if(spec.discontinuities.begin(), spec.discontinuities.end(),
                                       [f](const Discontinuity& d) { return d.frame == f; });
        if (jump != spec.discontinuities.end()) {
            const Vec3 axis = sample_unit_vector(rng);
            next.rotation = compose(UnitQuaternion::from_axis_angle_deg(axis, jump->jump_deg), prev.rotation);
            traj.poses.push_back(next);
            traj.discontinuity.push_back(true);
            continue;
        }

        if (spec.max_step_deg > 0.0) {
            while (quat_angle_deg(prev.rotation, rot_waypoint) < spec.max_step_deg) {
                rot_waypoint = sample_uniform_rotation(rng);
            }
            const double remaining = quat_angle_deg(prev.rotation, rot_waypoint);
            next.rotation = slerp(prev.rotation, rot_waypoint, spec.max_step_deg / remaining);
        }

        if (spec.max_step_m > 0.0) {
            if ((trans_waypoint - prev.translation).norm() <= 1e-12) {
                trans_waypoint = sample_pose_in_frustum(cam, spec.depth, mesh, rng).translation;
            }
            const Vec3 d = trans_waypoint - prev.translation;
            const double dist = d.norm();
            next.translation = dist <= spec.max_step_m ? trans_waypoint : prev.translation + d * (spec.max_step_m / dist);
        }

        traj.poses.push_back(next);
        traj.discontinuity.push_back(false);
    }
    return traj;
}

}  // namespace mvpose
