#include <algorithm>
#include <cmath>

#include "mvpose/error.hpp"
#include "mvpose/estimator.hpp"
#include "mvpose/random.hpp"
#include "mvpose/zoom.hpp"

namespace mvpose {

Observation make_observation(const Image& rgb, const Mask& mask, const BBox& crop) {
    return {zoom_crop(rgb, crop).first, zoom_mask(mask, crop), crop};
}

void NoiseModel::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must lie in (0, 1]");
    if (!(sigma_rot_deg >= 0.0) || !(sigma_trans_m >= 0.0) || !(sigma_theta_deg >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "noise sigmas must be >= 0");
    }
}

EstimatorOutput oracle_estimate(const MatchQuery& query, const NoiseModel& noise) {
    if (query.scene == nullptr) throw Error(ErrorCode::MissingSceneHandle, "oracle estimator needs the scene pose");
    noise.validate();

    const Pose& src = query.rendered_pose;
    const Pose& truth = query.scene->true_pose;
    const UnitQuaternion delta = relative_rotation(src, truth);
    const double true_angle = delta.angle_deg();
    const double s = noise.proportional ? true_angle / 45.0 + 0.1 : 1.0;

    Rng rng(derive_seed(noise.seed, {query.stream, query.call_index}));

    UnitQuaternion rot = slerp(UnitQuaternion::identity(), delta, noise.gamma);
    // Draws happen unconditionally so that changing one sigma leaves the other streams intact.
    const double rot_noise = rng.normal() * noise.sigma_rot_deg * s;
    Vec3 axis{rng.normal(), rng.normal(), rng.normal()};
    if (axis.norm() == 0.0) axis = {1.0, 0.0, 0.0};
    if (rot_noise != 0.0) rot = compose(UnitQuaternion::from_axis_angle_deg(axis, rot_noise), rot);

    const Vec3 contracted = src.translation + noise.gamma * (truth.translation - src.translation);
    const Vec3 trans_noise{rng.normal(), rng.normal(), rng.normal()};
    Vec3 target_t = contracted + trans_noise * (noise.sigma_trans_m * s);
    if (!(target_t.z > 0.0)) target_t.z = contracted.z;

    EstimatorOutput out;
    out.q_hat = rot.raw();
    out.v_hat = (noise.gamma == 1.0 && noise.sigma_trans_m == 0.0)
                    ? untangle(src, truth, query.cam)
                    : untangle(src, {truth.rotation, target_t}, query.cam);
    out.theta_hat = std::max(0.0, true_angle + rng.normal() * noise.sigma_theta_deg * s);
    return out;
}

OracleEstimator::OracleEstimator(NoiseModel noise, std::string name) : noise_(noise), name_(std::move(name)) {
    noise_.validate();
}

EstimatorOutput OracleEstimator::estimate(const MatchQuery& query) const { return oracle_estimate(query, noise_); }

std::unique_ptr<PoseDifferenceEstimator> make_estimator(std::string_view name, const NoiseModel& noise) {
    NoiseModel n = noise;
    if (name == "oracle") {
        n.gamma = 1.0;
        n.sigma_rot_deg = n.sigma_trans_m = n.sigma_theta_deg = 0.0;
        n.proportional = false;
    } else if (name == "contraction") {
        n.sigma_rot_deg = n.sigma_trans_m = n.sigma_theta_deg = 0.0;
        n.proportional = false;
    } else if (name == "noisy-proportional") {
        n.proportional = true;
    } else {
        throw Error(ErrorCode::ConfigError, "unknown estimator '" + std::string(name) + "'");
    }
    return std::make_unique<OracleEstimator>(n, std::string(name));
}

}  // namespace mvpose
