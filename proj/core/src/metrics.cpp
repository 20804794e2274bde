#include "mvpose/metrics.hpp"

#include "mvpose/error.hpp"

namespace mvpose {

PoseError pose_error(const Pose& est, const Pose& gt) {
    return {quat_angle_deg(est.rotation, gt.rotation), 100.0 * distance(est.translation, gt.translation)};
}

bool is_correct(const PoseError& err, double n) { return err.rot_deg < n && err.trans_cm < n; }

AccuracyReport accuracy(std::span<const PoseError> errors, std::span<const double> ns) {
    if (errors.empty()) throw Error(ErrorCode::EmptyInput, "accuracy needs at least one pose error");
    AccuracyReport report;
    report.sample_count = errors.size();
    for (double n : ns) {
        if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold n must be > 0");
        std::size_t correct = 0;
        for (const PoseError& e : errors) correct += is_correct(e, n) ? 1 : 0;
        report.accuracy[n] = static_cast<double>(correct) / static_cast<double>(errors.size());
    }
    return report;
}

}  // namespace mvpose
