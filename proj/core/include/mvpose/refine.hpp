#pragma once

#include <vector>

#include "mvpose/estimator.hpp"
#include "mvpose/mesh.hpp"
#include "mvpose/multi_view.hpp"

namespace mvpose {

struct RefinementConfig {
    double t_ref_deg = 2.0;
    int max_iters = 50;

    void validate() const;
};

enum class StopReason { Converged, ExhaustedPickedBest };

const char* to_string(StopReason r);

struct RefinementStep {
    Pose pose;          ///< pose that was rendered and measured
    double theta_hat;   ///< estimator's angle distance for that render
};

struct RefinementTrace {
    std::vector<RefinementStep> steps;
    StopReason stop_reason = StopReason::Converged;
    std::size_t selected = 0;  ///< index into steps of the returned pose

    const Pose& final_pose() const { return steps[selected].pose; }
    double final_theta_hat() const { return steps[selected].theta_hat; }
};

/// Render-and-compare refinement. Each iteration renders the current pose, queries the
/// estimator and records (pose, theta_hat). Stops as soon as theta_hat < t_ref and returns
/// the measured pose; otherwise applies the estimated delta and repeats. After max_iters
/// records the earliest pose with the lowest theta_hat is returned.
RefinementTrace refine(const Pose& initial, const Observation& target, const TriangleMesh& mesh,
                       const CameraIntrinsics& cam, const PoseDifferenceEstimator& estimator,
                       const RefinementConfig& cfg = {}, const QueryContext& ctx = {});

}  // namespace mvpose
