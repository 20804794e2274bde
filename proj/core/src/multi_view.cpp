#include "mvpose/multi_view.hpp"

#include "mvpose/random.hpp"
#include "mvpose/render.hpp"

namespace mvpose {

namespace {
constexpr std::uint64_t kMultiViewStreamTag = 0x4d56;  // "MV"
}

Observation render_observation(const TriangleMesh& mesh, const Pose& pose, const CameraIntrinsics& cam,
                               const BBox& crop) {
    const RenderOutput r = render(mesh, pose, cam);
    return make_observation(r.rgb, r.mask, crop);
}

MultiViewEstimate multi_view_initialize(const Observation& target, const BBox& bbox, const TriangleMesh& mesh,
                                        const CameraIntrinsics& cam, const PoseDifferenceEstimator& estimator,
                                        const QueryContext& ctx, const DepthPrior& prior) {
    const double depth = depth_from_bbox(bbox, cam, mesh.diameter(), prior.z_min, prior.z_max);
    MultiViewEstimate result;
    result.initial_translation = infer_translation_from_bbox(bbox, cam, depth);

    const auto& views = canonical_views();
    const std::uint64_t stream = derive_seed(ctx.stream, {kMultiViewStreamTag});
    std::array<EstimatorOutput, 6> outputs;
    std::array<Pose, 6> view_poses;
    for (std::size_t i = 0; i < views.size(); ++i) {
        view_poses[i] = {views[i], result.initial_translation};
        const Observation rendered = render_observation(mesh, view_poses[i], cam, target.crop);
        MatchQuery q{&target, &rendered, view_poses[i], cam, ctx.scene, stream, i};
        outputs[i] = estimator.estimate(q);
        result.theta_hats[i] = outputs[i].theta_hat;
        if (outputs[i].theta_hat < result.theta_hats[result.selected_view]) result.selected_view = i;
    }

    const EstimatorOutput& best = outputs[result.selected_view];
    result.pose = entangle(view_poses[result.selected_view], quat_normalize(best.q_hat), best.v_hat, cam);
    return result;
}

}  // namespace mvpose
