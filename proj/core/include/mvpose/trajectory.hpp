#pragma once

#include <vector>

#include "mvpose/camera.hpp"
#include "mvpose/mesh.hpp"
#include "mvpose/pose.hpp"
#include "mvpose/random.hpp"
#include "mvpose/sampling.hpp"

namespace mvpose {

struct Discontinuity {
    int frame = 0;
    double jump_deg = 0.0;
};

struct TrajectorySpec {
    int n_frames = 100;
    double max_step_deg = 5.0;
    double max_step_m = 0.01;
    std::vector<Discontinuity> discontinuities;
    DepthRange depth;  ///< translation waypoints are drawn inside this frustum slab
};

struct Trajectory {
    std::vector<Pose> poses;
    std::vector<bool> discontinuity;  ///< true where poses[i] was reached by an injected jump
    double max_step_deg = 0.0;
    double max_step_m = 0.0;
};

/// Smooth random walk: the rotation advances exactly max_step_deg per frame along the
/// geodesic toward a waypoint (a new uniform waypoint is drawn whenever the current one is
/// less than a step away) and the translation advances at most max_step_m toward a frustum
/// waypoint. At a listed frame the rotation instead jumps by exactly jump_deg about a
/// random axis and the step is flagged.
Trajectory generate_trajectory(const Pose& start, const TrajectorySpec& spec, const CameraIntrinsics& cam,
                               const TriangleMesh& mesh, Rng& rng);

}  // namespace mvpose
