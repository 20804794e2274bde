#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "mvpose/camera.hpp"
#include "mvpose/pose.hpp"
#include "mvpose/quaternion.hpp"
#include "mvpose/raster.hpp"

namespace mvpose {

/// Zoomed 640x480 RGB + mask pair, together with the box it was cropped from so that
/// renders can be zoomed identically.
struct Observation {
    Image rgb;
    Mask mask;
    BBox crop;
};

/// Zooms an image/mask pair with `crop` (already 4:3 and inside the frame).
Observation make_observation(const Image& rgb, const Mask& mask, const BBox& crop);

struct EstimatorOutput {
    RawQuaternion q_hat;   ///< relative rotation, camera frame, arbitrary norm
    UntangledDelta v_hat;  ///< relative untangled translation
    double theta_hat = 0;  ///< estimated angle distance between rendered and target, degrees
};

/// Grants an oracle estimator access to the true pose of the observed object.
struct SceneHandle {
    Pose true_pose;
};

struct MatchQuery {
    const Observation* target = nullptr;
    const Observation* rendered = nullptr;
    Pose rendered_pose;
    CameraIntrinsics cam;
    const SceneHandle* scene = nullptr;  ///< absent for non-oracle estimators
    std::uint64_t stream = 0;            ///< identifies the caller (record, frame, phase)
    std::uint64_t call_index = 0;        ///< position of this query within its stream
};

/// Estimates the pose difference between a rendered hypothesis and the target.
/// Implementations are immutable and deterministic given their configuration and the
/// (stream, call_index) of each query, so they are safe to share across threads.
class PoseDifferenceEstimator {
public:
    virtual ~PoseDifferenceEstimator() = default;
    virtual EstimatorOutput estimate(const MatchQuery& query) const = 0;
    virtual std::string_view name() const = 0;
};

struct NoiseModel {
    double gamma = 1.0;            ///< fraction of the true residual returned, (0, 1]
    double sigma_rot_deg = 0.0;
    double sigma_trans_m = 0.0;
    double sigma_theta_deg = 0.0;
    bool proportional = false;     ///< scale noise by (true angle / 45 deg + 0.1)
    std::uint64_t seed = 0;

    /// Throws Error(InvalidArgument) when gamma is outside (0, 1] or a sigma is negative.
    void validate() const;
    bool operator==(const NoiseModel&) const = default;
};

/// Test double for the trained matching network: computes the true relative pose from
/// the scene handle, contracts it by gamma and perturbs it.
///
/// Rotation: slerp(identity, true delta, gamma) followed by a random-axis rotation of
/// angle N(0, sigma_rot * s). Translation: gamma of the true metric offset plus
/// N(0, sigma_trans * s) per axis, re-expressed as an untangled delta. theta_hat: true angle
/// plus N(0, sigma_theta * s), clamped at 0.
class OracleEstimator final : public PoseDifferenceEstimator {
public:
    explicit OracleEstimator(NoiseModel noise, std::string name = "oracle");

    EstimatorOutput estimate(const MatchQuery& query) const override;
    std::string_view name() const override { return name_; }
    const NoiseModel& noise() const { return noise_; }

private:
    NoiseModel noise_;
    std::string name_;
};

EstimatorOutput oracle_estimate(const MatchQuery& query, const NoiseModel& noise);

/// "oracle" (gamma 1, no noise), "contraction" (configured gamma, no noise) or
/// "noisy-proportional" (full noise model, proportional scaling on).
std::unique_ptr<PoseDifferenceEstimator> make_estimator(std::string_view name, const NoiseModel& noise);

}  // namespace mvpose
