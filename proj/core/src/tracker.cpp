#include "mvpose/tracker.hpp"

#include "mvpose/error.hpp"
#include "mvpose/random.hpp"

namespace mvpose {

namespace {
constexpr std::uint64_t kTrackStreamTag = 0x5452;  // "TR"
constexpr std::uint64_t kRestartStreamTag = 0x5253;
}

void TrackerConfig::validate() const {
    if (!(t_low_deg > 0.0 && t_low_deg < t_high_deg)) {
        throw Error(ErrorCode::InvalidArgument, "tracker thresholds need 0 < t_low < t_high");
    }
    refinement.validate();
}

const char* to_string(TrackEvent e) {
    switch (e) {
        case TrackEvent::Initialized: return "Initialized";
        case TrackEvent::Updated: return "Updated";
        case TrackEvent::Held: return "Held";
        case TrackEvent::Restarted: return "Restarted";
    }
    return "Unknown";
}

RefinementTrace initialize_pose(const Observation& target, const BBox& bbox, const TriangleMesh& mesh, const CameraIntrinsics& cam,
                     const PoseDifferenceEstimator& estimator, const TrackerConfig& cfg, const QueryContext& ctx) {
    const MultiViewEstimate mv = multi_view_initialize(target, bbox, mesh, cam, estimator, ctx, cfg.depth_prior);
    return refine(mv.pose, target, mesh, cam, estimator, cfg.refinement, ctx);
}

TrackerState track_step(const TrackerState& state, const Observation& frame_target, const BBox& frame_bbox,
                        const TriangleMesh& mesh, const CameraIntrinsics& cam,
                        const PoseDifferenceEstimator& estimator, const TrackerConfig& cfg,
                        const QueryContext& ctx) {
    cfg.validate();
    const Observation rendered = render_observation(mesh, state.pose, cam, frame_target.crop);
    const MatchQuery q{&frame_target, &rendered, state.pose, cam, ctx.scene, derive_seed(ctx.stream, {kTrackStreamTag}), 0};
    const EstimatorOutput out = estimator.estimate(q);

    TrackerState next;
    next.frame_index = state.frame_index + 1;
    next.theta_hat = out.theta_hat;
    if (out.theta_hat > cfg.t_high_deg) {
        const QueryContext restart{ctx.scene, derive_seed(ctx.stream, {kRestartStreamTag})};
        next.pose = initialize_pose(frame_target, frame_bbox, mesh, cam, estimator, cfg, restart).final_pose();
        next.last_event = TrackEvent::Restarted;
    } else if (out.theta_hat < cfg.t_low_deg) {
        next.pose = state.pose;
        next.last_event = TrackEvent::Held;
    } else {
        next.pose = entangle(state.pose, quat_normalize(out.q_hat), out.v_hat, cam);
        next.last_event = TrackEvent::Updated;
    }
    return next;
}

std::vector<TrackerState> track_sequence(const std::vector<TrackFrame>& frames, const TriangleMesh& mesh,
                                         const CameraIntrinsics& cam, const PoseDifferenceEstimator& estimator,
                                         const TrackerConfig& cfg, const std::vector<SceneHandle>* scenes,
                                         std::uint64_t stream) {
    if (frames.empty()) throw Error(ErrorCode::EmptyInput, "tracking needs at least one frame");
    if (scenes != nullptr && scenes->size() != frames.size()) {
        throw Error(ErrorCode::InvalidArgument, "one scene handle per frame required");
    }
    cfg.validate();
    const auto scene_at = [&](std::size_t i) { return scenes ? &(*scenes)[i] : nullptr; };

    std::vector<TrackerState> states;
    states.reserve(frames.size());
    TrackerState first;
    first.frame_index = 0;
    first.last_event = TrackEvent::Initialized;
    const RefinementTrace init = initialize_pose(frames[0].target, frames[0].bbox, mesh, cam, estimator, cfg,
                                                 {scene_at(0), derive_seed(stream, {0})});
    first.pose = init.final_pose();
    first.theta_hat = init.final_theta_hat();
    states.push_back(first);

    for (std::size_t i = 1; i < frames.size(); ++i) {
        const QueryContext ctx{scene_at(i), derive_seed(stream, {i})};
        states.push_back(track_step(states.back(), frames[i].target, frames[i].bbox, mesh, cam, estimator, cfg, ctx));
    }
    return states;
}

}  // namespace mvpose
