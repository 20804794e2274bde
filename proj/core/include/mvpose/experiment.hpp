#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvpose/camera.hpp"
#include "mvpose/dataset.hpp"
#include "mvpose/estimator.hpp"
#include "mvpose/multi_view.hpp"
#include "mvpose/refine.hpp"
#include "mvpose/standardization.hpp"
#include "mvpose/tracker.hpp"
#include "mvpose/trajectory.hpp"

namespace mvpose {

struct MeshEntry {
    std::string id;
    std::string path;  ///< PLY path (relative to the config file) or builtin:<name>
    double scale = 1.0;
};

/// Externally supplied accuracy row shown next to ours in the summary table.
struct BaselineRow {
    std::string name;
    std::map<double, double> accuracy;  ///< n -> fraction; missing entries print as "-"
};

struct ExperimentConfig {
    std::string name = "ours";
    std::vector<MeshEntry> meshes{{"cube", "builtin:cube", 1.0}};
    CameraIntrinsics cam = linemod_intrinsics();
    std::string estimator = "oracle";
    NoiseModel noise;
    RefinementConfig refinement;
    TrackerConfig tracker;  ///< its refinement/depth_prior mirror the top-level sections
    DepthPrior depth_prior;
    DatasetSpec dataset;
    TrajectorySpec trajectory;
    std::vector<double> thresholds{2.0, 5.0, 10.0};
    std::vector<BaselineRow> baselines;
    std::optional<StandardizationStats> standardization;
    std::string output_dir = "out";

    /// Throws Error(ConfigError) on missing files or inconsistent thresholds.
    void validate() const;

    /// Keys absent from the document keep their defaults. Relative mesh paths resolve
    /// against `base_dir`.
    static ExperimentConfig from_json(const std::string& text, const std::string& base_dir = ".");
    static ExperimentConfig from_file(const std::string& path);
    std::string to_json() const;

    /// FNV-1a of the canonical JSON without output_dir.
    std::string digest() const;

    /// Tracker settings with the top-level refinement and depth prior applied.
    TrackerConfig tracker_config() const;

    /// Applies a command-line seed to both the dataset and the estimator noise.
    void override_seed(std::uint64_t seed);
};

}  // namespace mvpose
