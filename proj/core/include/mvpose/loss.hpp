#pragma once

#include <array>

#include "mvpose/pose.hpp"
#include "mvpose/quaternion.hpp"
#include "mvpose/vec3.hpp"

namespace mvpose {

// Training losses for the multi-view (mv) and single-view (sv) matchers:
//
//   mv = (1/N) (|1 - q.(q_hat/|q_hat|)| + |t - t_hat| + |1 - |q_hat||)
//   sv =        |1 - q.(q_hat/|q_hat|)| + |t - t_hat| + |1 - |q_hat|| + |theta - theta_hat|
//
// |t - t_hat| is the Euclidean norm. The rotation term is sign sensitive: q_hat = -q costs 2.
// Callers choose the space of t (the harness passes untangled deltas).

struct LossTarget {
    UnitQuaternion q;
    Vec3 t;
    double theta = 0.0;
};

struct LossEstimate {
    RawQuaternion q_hat;
    Vec3 t_hat;
    double theta_hat = 0.0;
};

enum class LossVariant { MultiView, SingleView };

/// Throws Error(ZeroNormQuaternion) when q_hat has zero norm.
double loss_mv(const UnitQuaternion& q, const Vec3& t, const RawQuaternion& q_hat, const Vec3& t_hat,
               int n_views = 6);
double loss_mv(const Pose& p, const RawQuaternion& q_hat, const Vec3& t_hat, int n_views = 6);

double loss_sv(const UnitQuaternion& q, const Vec3& t, const RawQuaternion& q_hat, const Vec3& t_hat,
               double theta, double theta_hat);
double loss_sv(const Pose& p, const RawQuaternion& q_hat, const Vec3& t_hat, double theta, double theta_hat);

double loss(LossVariant variant, const LossTarget& target, const LossEstimate& est, int n_views = 6);

struct LossGradient {
    std::array<double, 4> d_q_hat{};  ///< w, x, y, z
    Vec3 d_t_hat;
    double d_theta_hat = 0.0;          ///< always 0 for the mv variant
    /// Set when an absolute-value or norm argument is within 1e-9 of zero; that term
    /// then contributes the zero subgradient.
    bool non_differentiable = false;

    std::array<double, 8> flatten() const {
        return {d_q_hat[0], d_q_hat[1], d_q_hat[2], d_q_hat[3], d_t_hat.x, d_t_hat.y, d_t_hat.z, d_theta_hat};
    }
};

/// Analytic gradient with respect to (q_hat, t_hat, theta_hat).
LossGradient grad_loss(LossVariant variant, const LossTarget& target, const LossEstimate& est, int n_views = 6);

}  // namespace mvpose
