#include "mvpose/loss.hpp"

#include <cmath>

#include "mvpose/error.hpp"

namespace mvpose {

namespace {

constexpr double kKinkTolerance = 1e-9;

struct Terms {
    double rot = 0.0;    // |1 - q.u|
    double trans = 0.0;  // |t - t_hat|
    double norm = 0.0;   // |1 - |q_hat||
};

double checked_norm(const RawQuaternion& q_hat) {
    const double n = q_hat.norm();
    if (!(n >= 1e-12)) throw Error(ErrorCode::ZeroNormQuaternion, "loss needs a nonzero q_hat");
    return n;
}

double dot4(const UnitQuaternion& q, const RawQuaternion& r) {
    return q.w() * r.w + q.x() * r.x + q.y() * r.y + q.z() * r.z;
}

Terms pose_terms(const UnitQuaternion& q, const Vec3& t, const RawQuaternion& q_hat, const Vec3& t_hat) {
    const double n = checked_norm(q_hat);
    return {std::abs(1.0 - dot4(q, q_hat) / n), (t - t_hat).norm(), std::abs(1.0 - n)};
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double loss_mv(const UnitQuaternion& q, const Vec3& t, const RawQuaternion& q_hat, const Vec3& t_hat, int n_views) {
    if (n_views < 1) throw Error(ErrorCode::InvalidArgument, "n_views must be >= 1");
    const Terms terms = pose_terms(q, t, q_hat, t_hat);
    return (terms.rot + terms.trans + terms.norm) / n_views;
}

double loss_mv(const Pose& p, const RawQuaternion& q_hat, const Vec3& t_hat, int n_views) {
    return loss_mv(p.rotation, p.translation, q_hat, t_hat, n_views);
}

double loss_sv(const UnitQuaternion& q, const Vec3& t, const RawQuaternion& q_hat, const Vec3& t_hat, double theta,
               double theta_hat) {
    const Terms terms = pose_terms(q, t, q_hat, t_hat);
    return terms.rot + terms.trans + terms.norm + std::abs(theta - theta_hat);
}

double loss_sv(const Pose& p, const RawQuaternion& q_hat, const Vec3& t_hat, double theta, double theta_hat) {
    return loss_sv(p.rotation, p.translation, q_hat, t_hat, theta, theta_hat);
}

double loss(LossVariant variant, const LossTarget& target, const LossEstimate& est, int n_views) {
    return variant == LossVariant::MultiView
               ? loss_mv(target.q, target.t, est.q_hat, est.t_hat, n_views)
               : loss_sv(target.q, target.t, est.q_hat, est.t_hat, target.theta, est.theta_hat);
}

LossGradient grad_loss(LossVariant variant, const LossTarget& target, const LossEstimate& est, int n_views) {
    if (variant == LossVariant::MultiView && n_views < 1) throw Error(ErrorCode::InvalidArgument, "n_views must be >= 1");
    const RawQuaternion& r = est.q_hat;
    const double n = checked_norm(r);
    const std::array<double, 4> q = target.q.as_array();
    const std::array<double, 4> u = {r.w / n, r.x / n, r.y / n, r.z / n};
    const double d = q[0] * u[0] + q[1] * u[1] + q[2] * u[2] + q[3] * u[3];

    LossGradient g;

    // d|1 - d|/dr = -sign(1 - d) (q - d u) / n
    const double rot_arg = 1.0 - d;
    if (std::abs(rot_arg) < kKinkTolerance) {
        g.non_differentiable = true;
    } else {
        for (int i = 0; i < 4; ++i) g.d_q_hat[i] += -sign(rot_arg) * (q[i] - d * u[i]) / n;
    }

    // d|1 - n|/dr = -sign(1 - n) u
    const double norm_arg = 1.0 - n;
    if (std::abs(norm_arg) < kKinkTolerance) {
        g.non_differentiable = true;
    } else {
        for (int i = 0; i < 4; ++i) g.d_q_hat[i] += -sign(norm_arg) * u[i];
    }

    // d|t - t_hat|/dt_hat = -(t - t_hat) / |t - t_hat|
    const Vec3 diff = target.t - est.t_hat;
    const double dist = diff.norm();
    if (dist < kKinkTolerance) {
        g.non_differentiable = true;
    } else {
        g.d_t_hat = -diff / dist;
    }

    if (variant == LossVariant::SingleView) {
        const double theta_arg = target.theta - est.theta_hat;
        if (std::abs(theta_arg) < kKinkTolerance) {
            g.non_differentiable = true;
        } else {
            g.d_theta_hat = -sign(theta_arg);
        }
    } else {
        const double inv = 1.0 / n_views;
        for (auto& v : g.d_q_hat) v *= inv;
        g.d_t_hat = g.d_t_hat * inv;
    }
    return g;
}

}  // namespace mvpose
