#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mvpose/pose.hpp"

namespace mvpose {

struct PoseError {
    double rot_deg = 0.0;
    double trans_cm = 0.0;
};

/// Rotation angle distance and camera-frame translation distance in centimeters.
PoseError pose_error(const Pose& est, const Pose& gt);

/// (n deg, n cm) criterion with strict inequalities: rot_deg < n and trans_cm < n.
bool is_correct(const PoseError& err, double n);

struct AccuracyReport {
    std::map<double, double> accuracy;  ///< n -> fraction correct
    std::size_t sample_count = 0;
    std::string config_digest;
};

inline const std::vector<double>& default_thresholds() {
    static const std::vector<double> ns{2.0, 5.0, 10.0};
    return ns;
}

/// Throws Error(EmptyInput) on an empty error list.
AccuracyReport accuracy(std::span<const PoseError> errors, std::span<const double> ns = default_thresholds());

}  // namespace mvpose
