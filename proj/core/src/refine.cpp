#include "mvpose/refine.hpp"

#include "mvpose/error.hpp"
#include "mvpose/random.hpp"

namespace mvpose {

namespace {
constexpr std::uint64_t kRefineStreamTag = 0x5246;  // "RF"
}

void RefinementConfig::validate() const {
    if (!(t_ref_deg > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_ref_deg must be > 0");
    if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 1");
}

const char* to_string(StopReason r) {
    return r == StopReason::Converged ? "Converged" : "ExhaustedPickedBest";
}

RefinementTrace refine(const Pose& initial, const Observation& target, const TriangleMesh& mesh,
                       const CameraIntrinsics& cam, const PoseDifferenceEstimator& estimator,
                       const RefinementConfig& cfg, const QueryContext& ctx) {
    cfg.validate();
    if (!(initial.translation.z > 0.0)) throw Error(ErrorCode::NonPositiveDepth, "initial pose must have z > 0");

    const std::uint64_t stream = derive_seed(ctx.stream, {kRefineStreamTag});
    RefinementTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(cfg.max_iters));
    Pose current = initial;
    for (int i = 0; i < cfg.max_iters; ++i) {
        const Observation rendered = render_observation(mesh, current, cam, target.crop);
        const MatchQuery q{&target, &rendered, current, cam, ctx.scene, stream, static_cast<std::uint64_t>(i)};
        const EstimatorOutput out = estimator.estimate(q);
        trace.steps.push_back({current, out.theta_hat});
        if (out.theta_hat < cfg.t_ref_deg) {
            trace.stop_reason = StopReason::Converged;
            trace.selected = trace.steps.size() - 1;
            return trace;
        }
        current = entangle(current, quat_normalize(out.q_hat), out.v_hat, cam);
    }

    trace.stop_reason = StopReason::ExhaustedPickedBest;
    trace.selected = 0;
    for (std::size_t i = 1; i < trace.steps.size(); ++i) {
        if (trace.steps[i].theta_hat < trace.steps[trace.selected].theta_hat) trace.selected = i;
    }
    return trace;
}

}  // namespace mvpose
