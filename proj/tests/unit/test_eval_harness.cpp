#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mvpose/benchmark_runner.hpp"
#include "mvpose/error.hpp"
#include "mvpose/experiment.hpp"
#include "mvpose/metrics.hpp"
#include "mvpose/random.hpp"
#include "oracles.hpp"

using namespace mvpose;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("mvpose_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ExperimentConfig small_config(int n) {
    ExperimentConfig cfg;
    cfg.meshes = {{"box", "builtin:box", 1.0}};
    cfg.dataset.n_samples = n;
    cfg.dataset.seed = 7;
    cfg.trajectory.n_frames = 12;
    return cfg;
}

}  // namespace

TEST_CASE("pose_error") {
    const Pose gt{UnitQuaternion::from_axis_angle_deg({1, 2, 3}, 40), {0.1, 0.2, 0.9}};
    const PoseError zero = pose_error(gt, gt);
    CHECK(zero.rot_deg == 0.0);
    CHECK(zero.trans_cm == 0.0);

    const PoseError shifted = pose_error({gt.rotation, gt.translation + Vec3{0.03, 0, 0}}, gt);
    CHECK(shifted.trans_cm == doctest::Approx(3.0));

    const Pose turned{compose(UnitQuaternion::from_axis_angle_deg({0, 0, 1}, 90), gt.rotation), gt.translation};
    const oracle::Mat3 a = oracle::quat_matrix(turned.rotation), b = oracle::quat_matrix(gt.rotation);
    CHECK(pose_error(turned, gt).rot_deg == doctest::Approx(oracle::matrix_angle_deg(a, b)));
    CHECK(pose_error(turned, gt).rot_deg == doctest::Approx(90.0));
}

TEST_CASE("is_correct uses strict thresholds") {
    CHECK(is_correct({1.5, 1.8}, 2));
    CHECK_FALSE(is_correct({1.5, 2.5}, 2));
    CHECK(is_correct({1.5, 2.5}, 5));
    CHECK_FALSE(is_correct({2.0, 1.0}, 2));
    CHECK_FALSE(is_correct({1.0, 2.0}, 2));
}

TEST_CASE("accuracy") {
    const std::vector<PoseError> zeros(5);
    const AccuracyReport all = accuracy(zeros);
    for (double n : {2.0, 5.0, 10.0}) CHECK(all.accuracy.at(n) == 1.0);
    CHECK(all.sample_count == 5);

    const std::vector<PoseError> ladder{{1, 1}, {4, 4}, {9, 9}, {20, 20}};
    const AccuracyReport r = accuracy(ladder);
    CHECK(r.accuracy.at(2.0) == 0.25);
    CHECK(r.accuracy.at(5.0) == 0.5);
    CHECK(r.accuracy.at(10.0) == 0.75);

    try {
        accuracy(std::vector<PoseError>{});
        FAIL("expected EmptyInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyInput);
    }
}

TEST_CASE("accuracy matches a brute-force recount") {
    Rng rng(99);
    std::vector<PoseError> errors(1000);
    for (auto& e : errors) e = {rng.uniform(0, 15), rng.uniform(0, 15)};
    // A few exact boundary values.
    errors[0] = {2.0, 0.5};
    errors[1] = {0.5, 5.0};
    const std::vector<double> ns{1, 2, 3, 5, 7.5, 10, 12};
    const AccuracyReport r = accuracy(errors, ns);
    double prev = 0;
    for (double n : ns) {
        CHECK(r.accuracy.at(n) == oracle::brute_force_accuracy(errors, n));
        CHECK(r.accuracy.at(n) >= prev);
        prev = r.accuracy.at(n);
    }
}

TEST_CASE("experiment config JSON") {
    const fs::path dir = scratch_dir("cfg");
    {
        std::ofstream ply(dir / "tri.ply");
        ply << "ply\nformat ascii 1.0\nelement vertex 3\nproperty float x\nproperty float y\nproperty float z\n"
               "element face 1\nproperty list uchar int vertex_indices\nend_header\n0 0 0\n0.1 0 0\n0 0.1 0\n3 0 1 2\n";
    }
    const std::string text = R"({
      "name": "sweep",
      "meshes": ["builtin:cube", {"path": "tri.ply", "scale": 2.0}],
      "camera": {"fx": 500, "fy": 500, "px": 320, "py": 240},
      "estimator": {"name": "noisy-proportional", "noise": {"sigma_rot_deg": 5, "seed": 3}},
      "refinement": {"t_ref_deg": 1.5, "max_iters": 20},
      "tracker": {"t_low_deg": 1, "t_high_deg": 30},
      "dataset": {"n_samples": 4, "depth_range": [0.6, 1.2], "seed": 11},
      "trajectory": {"n_frames": 30, "discontinuities": [[10, 30.0]]},
      "baselines": [{"name": "prior work", "accuracy": {"5": 0.5}}],
      "output_dir": "results"
    })";
    const ExperimentConfig cfg = ExperimentConfig::from_json(text, dir.string());
    CHECK(cfg.name == "sweep");
    REQUIRE(cfg.meshes.size() == 2);
    CHECK(cfg.meshes[0].id == "cube");
    CHECK(cfg.meshes[1].id == "tri");
    CHECK(cfg.meshes[1].scale == 2.0);
    CHECK(fs::path(cfg.meshes[1].path).is_absolute() == dir.is_absolute());
    CHECK(cfg.cam.fx == 500);
    CHECK(cfg.cam.width == 640);
    CHECK(cfg.estimator == "noisy-proportional");
    CHECK(cfg.noise.sigma_rot_deg == 5);
    CHECK(cfg.refinement.max_iters == 20);
    CHECK(cfg.tracker_config().refinement.max_iters == 20);
    CHECK(cfg.tracker_config().t_high_deg == 30);
    CHECK(cfg.dataset.depth.z_max == 1.2);
    CHECK(cfg.trajectory.depth.z_min == 0.6);
    REQUIRE(cfg.trajectory.discontinuities.size() == 1);
    CHECK(cfg.trajectory.discontinuities[0].frame == 10);
    CHECK(cfg.baselines[0].accuracy.at(5.0) == 0.5);
    CHECK(cfg.output_dir == "results");

    const ExperimentConfig again = ExperimentConfig::from_json(cfg.to_json(), dir.string());
    CHECK(again.to_json() == cfg.to_json());
    CHECK(again.digest() == cfg.digest());

    ExperimentConfig moved = cfg;
    moved.output_dir = "elsewhere";
    CHECK(moved.digest() == cfg.digest());
    moved.override_seed(5);
    CHECK(moved.dataset.seed == 5);
    CHECK(moved.noise.seed == 5);
    CHECK(moved.digest() != cfg.digest());

    const auto code = [&](const std::string& t) {
        try {
            ExperimentConfig::from_json(t, dir.string());
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code("{not json") == ErrorCode::ConfigError);
    CHECK(code(R"({"meshes": ["missing.ply"]})") == ErrorCode::ConfigError);
    CHECK(code(R"({"thresholds": [2, -1]})") == ErrorCode::ConfigError);
    CHECK(code(R"({"meshes": []})") == ErrorCode::ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("estimation benchmark with the noiseless oracle") {
    const fs::path a = scratch_dir("est_a"), b = scratch_dir("est_b");
    const ExperimentConfig cfg = small_config(8);
    const EstimationResult ra = run_estimation_benchmark(cfg, a.string());
    const EstimationResult rb = run_estimation_benchmark(cfg, b.string());
    for (double n : cfg.thresholds) CHECK(ra.report.accuracy.at(n) == 1.0);
    CHECK(ra.report.sample_count == 8);
    CHECK(ra.report.config_digest == cfg.digest());
    for (const auto& rec : ra.records) {
        CHECK(rec.refine_steps == 1);
        CHECK(rec.stop_reason == StopReason::Converged);
    }
    for (const char* f : {"errors.csv", "report.csv", "summary.txt"}) {
        REQUIRE(fs::exists(a / f));
        CHECK(slurp(a / f) == slurp(b / f));
    }
    const std::string errors = slurp(a / "errors.csv");
    CHECK(errors.rfind("mesh,index,rot_deg,trans_cm,refine_steps,stop_reason,selected_view\n", 0) == 0);
    CHECK(std::count(errors.begin(), errors.end(), '\n') == 9);

    const std::string table = format_accuracy_table(cfg, ra.report);
    CHECK(table.find("ours") != std::string::npos);
    CHECK(table.find("100.0") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("estimation accuracy degrades with rotation noise") {
    ExperimentConfig cfg = small_config(24);
    cfg.estimator = "noisy-proportional";
    cfg.noise.sigma_theta_deg = 0.5;
    cfg.noise.sigma_trans_m = 0.001;
    cfg.noise.seed = 4;
    std::map<double, double> prev;
    for (double sigma : {0.0, 2.0, 5.0, 10.0}) {
        cfg.noise.sigma_rot_deg = sigma;
        const AccuracyReport r = run_estimation_benchmark(cfg).report;
        if (sigma == 0.0) CHECK(r.accuracy.at(5.0) == 1.0);
        for (const auto& [n, acc] : r.accuracy) {
            if (prev.count(n)) CHECK(acc <= prev[n]);
            prev[n] = acc;
        }
    }
}

TEST_CASE("tracking benchmark") {
    ExperimentConfig cfg = small_config(1);
    cfg.trajectory.n_frames = 30;
    cfg.trajectory.discontinuities = {{20, 30.0}};
    const fs::path dir = scratch_dir("trk");
    const TrackingResult r = run_tracking_benchmark(cfg, dir.string());
    REQUIRE(r.frames.size() == 30);
    CHECK(r.event_counts.at(TrackEvent::Restarted) == 1);
    CHECK(r.frames[20].event == TrackEvent::Restarted);
    CHECK(r.frames[20].discontinuity);
    CHECK(r.max_rot_err_deg < 1e-6);
    for (const auto& f : r.frames) {
        if (f.event == TrackEvent::Initialized) continue;
        CHECK((f.event == TrackEvent::Held) == (f.theta_hat < 2.0));
    }
    CHECK(fs::exists(dir / "tracking.csv"));
    CHECK(fs::exists(dir / "tracking_summary.csv"));
    fs::remove_all(dir);
}

TEST_CASE("gradient check report") {
    const auto rows = run_gradient_check(20, 3);
    CHECK(rows.size() == 40);
    for (const auto& row : rows) CHECK(row.rel_error < 1e-4);
}
