#pragma once

#include <vector>

#include "mvpose/estimator.hpp"
#include "mvpose/multi_view.hpp"
#include "mvpose/refine.hpp"

namespace mvpose {

struct TrackerConfig {
    double t_low_deg = 2.0;
    double t_high_deg = 25.0;
    RefinementConfig refinement;
    DepthPrior depth_prior;

    void validate() const;
};

/// Initialized marks the first frame (multi-view init + refinement); it is not a restart.
enum class TrackEvent { Initialized, Updated, Held, Restarted };

const char* to_string(TrackEvent e);

struct TrackerState {
    Pose pose;
    TrackEvent last_event = TrackEvent::Initialized;
    int frame_index = 0;
    double theta_hat = 0.0;  ///< estimate that drove the last transition
};

struct TrackFrame {
    Observation target;
    BBox bbox;  ///< detection box, used only on restart
};

/// Pose estimate for a fresh detection: multi-view initialization followed by refinement.
RefinementTrace initialize_pose(const Observation& target, const BBox& bbox, const TriangleMesh& mesh, const CameraIntrinsics& cam,
                     const PoseDifferenceEstimator& estimator, const TrackerConfig& cfg, const QueryContext& ctx);

/// One tracking step against the next frame. theta_hat > t_high restarts from the six
/// views, theta_hat < t_low holds the pose unchanged, anything else applies the delta once.
/// `ctx.stream` should identify the frame; the returned state has frame_index + 1.
TrackerState track_step(const TrackerState& state, const Observation& frame_target, const BBox& frame_bbox,
                        const TriangleMesh& mesh, const CameraIntrinsics& cam,
                        const PoseDifferenceEstimator& estimator, const TrackerConfig& cfg,
                        const QueryContext& ctx = {});

/// Runs the tracker over a sequence. `scenes`, when given, supplies one oracle handle per
/// frame. Frame streams are derived from `stream`.
std::vector<TrackerState> track_sequence(const std::vector<TrackFrame>& frames, const TriangleMesh& mesh,
                                         const CameraIntrinsics& cam, const PoseDifferenceEstimator& estimator,
                                         const TrackerConfig& cfg, const std::vector<SceneHandle>* scenes = nullptr,
                                         std::uint64_t stream = 0);

}  // namespace mvpose
