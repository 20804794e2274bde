#include "mvpose/benchmark_runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mvpose/dataset.hpp"
#include "mvpose/error.hpp"
#include "mvpose/loss.hpp"
#include "mvpose/multi_view.hpp"
#include "mvpose/random.hpp"
#include "mvpose/refine.hpp"
#include "mvpose/sampling.hpp"
#include "mvpose/trajectory.hpp"

namespace mvpose {

namespace {

constexpr std::uint64_t kTrackingSeedTag = 0x54524b;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::ofstream open_csv(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream os(std::filesystem::path(dir) / name);
    if (!os) throw Error(ErrorCode::IoError, "cannot write " + dir + "/" + name);
    return os;
}

std::string header_label(double n) {
    std::ostringstream ss;
    ss << '(' << n << ", " << n << ')';
    return ss.str();
}

}  // namespace

EstimationResult run_estimation_benchmark(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    const auto estimator = make_estimator(cfg.estimator, cfg.noise);

    std::ofstream errors_csv;
    const bool write = !out_dir.empty();
    if (write) {
        errors_csv = open_csv(out_dir, "errors.csv");
        errors_csv << "mesh,index,rot_deg,trans_cm,refine_steps,stop_reason,selected_view\n";
    }

    EstimationResult result;
    std::vector<PoseError> errors;
    for (std::size_t m = 0; m < cfg.meshes.size(); ++m) {
        const MeshEntry& entry = cfg.meshes[m];
        const TriangleMesh mesh = load_mesh(entry.path, entry.scale);
        DatasetSpec spec = cfg.dataset;
        spec.seed = derive_seed(cfg.dataset.seed, {m});
        const auto records = generate_dataset(mesh, spec, cfg.cam, entry.id);

        for (std::size_t i = 0; i < records.size(); ++i) {
            const DatasetRecord& rec = records[i];
            const SceneHandle scene{rec.scene.true_pose};
            const QueryContext ctx{&scene, derive_seed(cfg.noise.seed, {m, i})};
            const MultiViewEstimate mv =
                multi_view_initialize(rec.observation, rec.bbox, mesh, cfg.cam, *estimator, ctx, cfg.depth_prior);
            const RefinementTrace trace = refine(mv.pose, rec.observation, mesh, cfg.cam, *estimator, cfg.refinement, ctx);

            EstimationRecordResult r{entry.id, i, pose_error(trace.final_pose(), rec.scene.true_pose),
                                     trace.steps.size(), trace.stop_reason, mv.selected_view};
            errors.push_back(r.error);
            if (write) {
                errors_csv << r.mesh_id << ',' << r.index << ',' << fmt(r.error.rot_deg) << ',' << fmt(r.error.trans_cm)
                           << ',' << r.refine_steps << ',' << to_string(r.stop_reason) << ',' << r.selected_view
                           << '\n';
                errors_csv.flush();
            }
            result.records.push_back(std::move(r));
        }
    }

    result.report = accuracy(errors, cfg.thresholds);
    result.report.config_digest = cfg.digest();

    if (write) {
        auto report_csv = open_csv(out_dir, "report.csv");
        report_csv << "method,n,accuracy,samples,config_digest\n";
        for (const auto& [n, acc] : result.report.accuracy) {
            report_csv << cfg.name << ',' << fmt(n) << ',' << fmt(acc) << ',' << result.report.sample_count << ','
                       << result.report.config_digest << '\n';
        }
        auto summary = open_csv(out_dir, "summary.txt");
        summary << format_accuracy_table(cfg, result.report);
    }
    return result;
}

TrackingResult run_tracking_benchmark(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    const auto estimator = make_estimator(cfg.estimator, cfg.noise);
    const TrackerConfig tcfg = cfg.tracker_config();

    TrackingResult result;
    for (std::size_t m = 0; m < cfg.meshes.size(); ++m) {
        const MeshEntry& entry = cfg.meshes[m];
        const TriangleMesh mesh = load_mesh(entry.path, entry.scale);
        Rng rng(derive_seed(cfg.dataset.seed, {kTrackingSeedTag, m}));
        const Pose start = sample_pose_in_frustum(cfg.cam, cfg.trajectory.depth, mesh, rng);
        const Trajectory traj = generate_trajectory(start, cfg.trajectory, cfg.cam, mesh, rng);

        std::vector<TrackFrame> frames;
        std::vector<SceneHandle> scenes;
        frames.reserve(traj.poses.size());
        for (std::size_t f = 0; f < traj.poses.size(); ++f) {
            Rng frame_rng(derive_seed(cfg.dataset.seed, {kTrackingSeedTag, m, f}));
            DatasetRecord rec = make_record(mesh, traj.poses[f], cfg.dataset, cfg.cam, frame_rng, entry.id);
            frames.push_back({std::move(rec.observation), rec.bbox});
            scenes.push_back({traj.poses[f]});
        }

        const auto states = track_sequence(frames, mesh, cfg.cam, *estimator, tcfg, &scenes,
                                           derive_seed(cfg.noise.seed, {kTrackingSeedTag, m}));
        for (std::size_t f = 0; f < states.size(); ++f) {
            const PoseError e = pose_error(states[f].pose, traj.poses[f]);
            result.frames.push_back({entry.id, states[f].frame_index, states[f].last_event, states[f].theta_hat,
                                     e.rot_deg, e.trans_cm / 100.0, traj.discontinuity[f]});
            ++result.event_counts[states[f].last_event];
        }
    }

    for (const auto& f : result.frames) {
        result.mean_rot_err_deg += f.rot_err_deg;
        result.mean_trans_err_m += f.trans_err_m;
        result.max_rot_err_deg = std::max(result.max_rot_err_deg, f.rot_err_deg);
        result.max_trans_err_m = std::max(result.max_trans_err_m, f.trans_err_m);
    }
    if (!result.frames.empty()) {
        result.mean_rot_err_deg /= static_cast<double>(result.frames.size());
        result.mean_trans_err_m /= static_cast<double>(result.frames.size());
    }

    if (!out_dir.empty()) {
        auto csv = open_csv(out_dir, "tracking.csv");
        csv << "mesh,frame_index,event,theta_hat,rot_err_deg,trans_err_m,discontinuity\n";
        for (const auto& f : result.frames) {
            csv << f.mesh_id << ',' << f.frame_index << ',' << to_string(f.event) << ',' << fmt(f.theta_hat) << ','
                << fmt(f.rot_err_deg) << ',' << fmt(f.trans_err_m) << ',' << (f.discontinuity ? 1 : 0) << '\n';
        }
        auto summary = open_csv(out_dir, "tracking_summary.csv");
        summary << "metric,value\n";
        for (TrackEvent e : {TrackEvent::Initialized, TrackEvent::Updated, TrackEvent::Held, TrackEvent::Restarted}) {
            const auto it = result.event_counts.find(e);
            summary << "count_" << to_string(e) << ',' << (it == result.event_counts.end() ? 0 : it->second) << '\n';
        }
        summary << "mean_rot_err_deg," << fmt(result.mean_rot_err_deg) << '\n';
        summary << "max_rot_err_deg," << fmt(result.max_rot_err_deg) << '\n';
        summary << "mean_trans_err_m," << fmt(result.mean_trans_err_m) << '\n';
        summary << "max_trans_err_m," << fmt(result.max_trans_err_m) << '\n';
    }
    return result;
}

std::string format_accuracy_table(const ExperimentConfig& cfg, const AccuracyReport& report) {
    std::size_t name_w = std::string("Method").size();
    for (const auto& b : cfg.baselines) name_w = std::max(name_w, b.name.size());
    name_w = std::max(name_w, cfg.name.size()) + 2;
    constexpr int kCol = 10;

    std::ostringstream os;
    std::string rule(name_w + kCol * report.accuracy.size(), '-');
    char buf[64];
    os << rule << '\n';
    os << std::string(name_w, ' ');
    std::snprintf(buf, sizeof(buf), "%*s", kCol * static_cast<int>(report.accuracy.size()), "(n deg, n cm)");
    os << buf << '\n';
    std::snprintf(buf, sizeof(buf), "%-*s", static_cast<int>(name_w), "Method");
    os << buf;
    for (const auto& [n, acc] : report.accuracy) {
        std::snprintf(buf, sizeof(buf), "%*s", kCol, header_label(n).c_str());
        os << buf;
    }
    os << '\n' << rule << '\n';

    const auto row = [&](const std::string& name, const std::map<double, double>& values) {
        std::snprintf(buf, sizeof(buf), "%-*s", static_cast<int>(name_w), name.c_str());
        os << buf;
        for (const auto& [n, unused] : report.accuracy) {
            const auto it = values.find(n);
            if (it == values.end()) {
                std::snprintf(buf, sizeof(buf), "%*s", kCol, "-");
            } else {
                std::snprintf(buf, sizeof(buf), "%*.1f%%", kCol - 1, 100.0 * it->second);
            }
            os << buf;
        }
        os << '\n';
    };
    for (const auto& b : cfg.baselines) row(b.name, b.accuracy);
    row(cfg.name, report.accuracy);
    os << rule << '\n';
    os << "samples: " << report.sample_count << "  config: " << report.config_digest << '\n';
    return os.str();
}

std::vector<GradientCheckRow> run_gradient_check(std::size_t n_points, std::uint64_t seed, double h) {
    std::vector<GradientCheckRow> rows;
    for (LossVariant variant : {LossVariant::MultiView, LossVariant::SingleView}) {
        const char* label = variant == LossVariant::MultiView ? "mv" : "sv";
        for (std::size_t i = 0; i < n_points; ++i) {
            Rng rng(derive_seed(seed, {variant == LossVariant::MultiView ? 1u : 2u, i}));
            LossTarget target{sample_uniform_rotation(rng), {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)},
                              rng.uniform(0, 90)};
            LossEstimate est;
            // Keep every absolute-value argument well away from zero.
            do {
                const double scale = rng.uniform(0.3, 2.0);
                const UnitQuaternion dir = sample_uniform_rotation(rng);
                est.q_hat = {dir.w() * scale, dir.x() * scale, dir.y() * scale, dir.z() * scale};
                est.t_hat = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
                est.theta_hat = rng.uniform(0, 90);
            } while (std::abs(1.0 - est.q_hat.norm()) < 1e-2 || (target.t - est.t_hat).norm() < 1e-2 ||
                     std::abs(target.theta - est.theta_hat) < 1e-2 ||
                     std::abs(1.0 - dot(target.q, quat_normalize(est.q_hat))) < 1e-2);

            const auto analytic = grad_loss(variant, target, est).flatten();
            std::array<double, 8> numeric{};
            const auto param = [](LossEstimate& e, int k) -> double& {
                switch (k) {
                    case 0: return e.q_hat.w;
                    case 1: return e.q_hat.x;
                    case 2: return e.q_hat.y;
                    case 3: return e.q_hat.z;
                    case 4: return e.t_hat.x;
                    case 5: return e.t_hat.y;
                    case 6: return e.t_hat.z;
                    default: return e.theta_hat;
                }
            };
            const int n_params = variant == LossVariant::MultiView ? 7 : 8;
            for (int k = 0; k < n_params; ++k) {
                LossEstimate plus = est, minus = est;
                param(plus, k) += h;
                param(minus, k) -= h;
                numeric[static_cast<std::size_t>(k)] = (loss(variant, target, plus) - loss(variant, target, minus)) / (2 * h);
            }
            double diff = 0.0, ref = 0.0;
            for (std::size_t k = 0; k < 8; ++k) {
                diff += (analytic[k] - numeric[k]) * (analytic[k] - numeric[k]);
                ref += numeric[k] * numeric[k];
            }
            rows.push_back({label, i, std::sqrt(diff) / std::max(std::sqrt(ref), 1e-12)});
        }
    }
    return rows;
}

}  // namespace mvpose
