#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mvpose/experiment.hpp"
#include "mvpose/metrics.hpp"
#include "mvpose/tracker.hpp"

namespace mvpose {

struct EstimationRecordResult {
    std::string mesh_id;
    std::size_t index = 0;
    PoseError error;
    std::size_t refine_steps = 0;
    StopReason stop_reason = StopReason::Converged;
    std::size_t selected_view = 0;
};

struct EstimationResult {
    AccuracyReport report;
    std::vector<EstimationRecordResult> records;
};

/// For every mesh: generate the dataset, run multi-view initialization and refinement per
/// record, and score the final poses. When `out_dir` is non-empty, writes errors.csv (rows
/// flushed as they complete, so partial results survive a failure), report.csv and
/// summary.txt there.
EstimationResult run_estimation_benchmark(const ExperimentConfig& cfg, const std::string& out_dir = {});

struct TrackingFrameResult {
    std::string mesh_id;
    int frame_index = 0;
    TrackEvent event = TrackEvent::Initialized;
    double theta_hat = 0.0;
    double rot_err_deg = 0.0;
    double trans_err_m = 0.0;
    bool discontinuity = false;
};

struct TrackingResult {
    std::vector<TrackingFrameResult> frames;
    std::map<TrackEvent, std::size_t> event_counts;
    double mean_rot_err_deg = 0.0;
    double max_rot_err_deg = 0.0;
    double mean_trans_err_m = 0.0;
    double max_trans_err_m = 0.0;
};

/// Tracks a generated trajectory per mesh. Writes tracking.csv and tracking_summary.csv
/// into `out_dir` when non-empty.
TrackingResult run_tracking_benchmark(const ExperimentConfig& cfg, const std::string& out_dir = {});

/// Aligned text table: one column per threshold, baseline rows first, then cfg.name.
std::string format_accuracy_table(const ExperimentConfig& cfg, const AccuracyReport& report);

struct GradientCheckRow {
    std::string variant;
    std::size_t point = 0;
    double rel_error = 0.0;
};

/// Compares grad_loss against central differences (step h) at seeded random points away
/// from the kinks of the absolute values.
std::vector<GradientCheckRow> run_gradient_check(std::size_t n_points, std::uint64_t seed, double h = 1e-5);

}  // namespace mvpose
