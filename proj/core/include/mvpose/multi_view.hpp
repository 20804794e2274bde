#pragma once

#include <array>
#include <cstdint>

#include "mvpose/estimator.hpp"
#include "mvpose/mesh.hpp"
#include "mvpose/raster.hpp"

namespace mvpose {

/// Caller-side context shared by the controllers: optional oracle access and the random
/// stream that keys every estimator query made on behalf of one record or sequence.
struct QueryContext {
    const SceneHandle* scene = nullptr;
    std::uint64_t stream = 0;
};

/// Bounds applied to the depth guessed from the detection box.
struct DepthPrior {
    double z_min = 0.1;
    double z_max = 10.0;
};

struct MultiViewEstimate {
    Pose pose;                         ///< relative to the frontal canonical frame
    std::size_t selected_view = 0;
    std::array<double, 6> theta_hats{};
    Vec3 initial_translation;          ///< translation inferred from the box center
};

/// Initial pose from the six canonical views: each view is rendered at the translation
/// inferred from the box, queried once, and the view with the smallest theta_hat (earliest
/// on ties) has its estimated delta applied.
MultiViewEstimate multi_view_initialize(const Observation& target, const BBox& bbox, const TriangleMesh& mesh,
                                        const CameraIntrinsics& cam, const PoseDifferenceEstimator& estimator,
                                        const QueryContext& ctx = {}, const DepthPrior& prior = {});

/// Renders `pose` and zooms it with the target's crop box.
Observation render_observation(const TriangleMesh& mesh, const Pose& pose, const CameraIntrinsics& cam,
                               const BBox& crop);

}  // namespace mvpose
