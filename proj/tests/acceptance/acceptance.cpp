// Acceptance suite: one PASS/FAIL line per criterion.
//
//   mvpose_acceptance --cli <path to mvpose> [--criterion N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvpose/benchmark_runner.hpp"
#include "mvpose/dataset.hpp"
#include "mvpose/estimator.hpp"
#include "mvpose/loss.hpp"
#include "mvpose/metrics.hpp"
#include "mvpose/raster.hpp"
#include "mvpose/refine.hpp"
#include "mvpose/render.hpp"
#include "mvpose/sampling.hpp"
#include "mvpose/tracker.hpp"
#include "mvpose/trajectory.hpp"
#include "mvpose/zoom.hpp"
#include "oracles.hpp"

using namespace mvpose;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("mvpose_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

int run(const std::string& cmd) {
    const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
    return rc;
}

DatasetRecord target_for(const TriangleMesh& mesh, const Pose& pose, const CameraIntrinsics& cam) {
    DatasetSpec spec;
    spec.mask_dilate_max = 0;
    Rng rng(0);
    return make_record(mesh, pose, spec, cam, rng, "acceptance");
}

std::string g_cli;

// 1. Noiseless oracle through the CLI: accuracy 1.0, one refinement step per record, < 60 s.
Outcome oracle_exactness() {
    const fs::path dir = scratch("c1");
    {
        std::ofstream cfg(dir / "config.json");
        cfg << R"({"name": "oracle", "meshes": ["builtin:cube"], "estimator": {"name": "oracle"},
                  "dataset": {"n_samples": 200, "seed": 1}})";
    }
    const auto t0 = std::chrono::steady_clock::now();
    const int rc = run(g_cli + " benchmark-estimate --config " + (dir / "config.json").string() + " --out " +
                       (dir / "out").string());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (rc != 0) return {false, "CLI exited with " + std::to_string(rc)};

    const auto report = read_csv(dir / "out" / "report.csv");
    std::map<std::string, std::string> acc;
    for (std::size_t i = 1; i < report.size(); ++i) acc[report[i].at(1)] = report[i].at(2);
    const auto errors = read_csv(dir / "out" / "errors.csv");
    int one_step = 0, rows = 0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        ++rows;
        one_step += errors[i].at(4) == "1" && errors[i].at(5) == "Converged";
    }
    const bool all_one = acc["2"] == "1" && acc["5"] == "1" && acc["10"] == "1";
    const bool pass = all_one && rows == 200 && one_step == 200 && secs < 60.0;
    return {pass, "acc(2,5,10)=" + acc["2"] + "/" + acc["5"] + "/" + acc["10"] + ", single-step traces " +
                      std::to_string(one_step) + "/" + std::to_string(rows) + ", " + num(secs) + " s"};
}

// 2. Contraction gamma = 0.5 from 40 degrees.
Outcome contraction_convergence() {
    const CameraIntrinsics cam;
    const TriangleMesh mesh = make_box(0.12, 0.08, 0.05);
    const Pose truth{UnitQuaternion::from_axis_angle_deg({0.2, 1, 0.1}, 35), {0.01, -0.01, 0.9}};
    const Pose start{compose(UnitQuaternion::from_axis_angle_deg({1, -1, 2}, 40), truth.rotation), truth.translation};
    const DatasetRecord rec = target_for(mesh, truth, cam);
    const SceneHandle scene{truth};
    NoiseModel noise;
    noise.gamma = 0.5;
    const auto est = make_estimator("contraction", noise);

    struct Counter final : PoseDifferenceEstimator {
        const PoseDifferenceEstimator& inner;
        mutable int calls = 0;
        explicit Counter(const PoseDifferenceEstimator& e) : inner(e) {}
        EstimatorOutput estimate(const MatchQuery& q) const override {
            ++calls;
            return inner.estimate(q);
        }
        std::string_view name() const override { return "counter"; }
    } counter(*est);

    const RefinementTrace trace = refine(start, rec.observation, mesh, cam, counter, {}, {&scene, 0});
    const std::vector<double> expected{40, 20, 10, 5, 2.5, 1.25};
    bool seq_ok = trace.steps.size() == expected.size();
    double worst = 0;
    std::string seq;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        seq += (i ? "," : "") + num(trace.steps[i].theta_hat);
        if (i < expected.size()) worst = std::max(worst, std::abs(trace.steps[i].theta_hat - expected[i]));
    }
    seq_ok = seq_ok && worst <= 1e-6;
    const int closed_form = static_cast<int>(std::ceil(std::log2(40.0 / RefinementConfig{}.t_ref_deg))) + 1;
    const bool pass = seq_ok && trace.stop_reason == StopReason::Converged && counter.calls == 6 &&
                      counter.calls == closed_form;
    return {pass, "theta_hat " + seq + " (max dev " + num(worst) + "), " + std::to_string(counter.calls) +
                      " calls, closed form " + std::to_string(closed_form) + ", " + to_string(trace.stop_reason)};
}

// 3. Loss values and gradients.
Outcome loss_correctness() {
    bool ok = true;
    std::string notes;
    const UnitQuaternion id = UnitQuaternion::identity();
    const UnitQuaternion qx = UnitQuaternion::from_components(0, 1, 0, 0);
    const Vec3 t{0.3, -0.1, 0.2};
    for (const UnitQuaternion& q : {id, qx}) {
        const RawQuaternion neg{-q.w(), -q.x(), -q.y(), -q.z()};
        ok = ok && loss_mv(q, t, q.raw(), t) == 0.0 && loss_sv(q, t, q.raw(), t, 7, 7) == 0.0;
        ok = ok && loss_sv(q, t, neg, t, 7, 7) == 2.0 && loss_mv(q, t, neg, t) == 1.0 / 3.0;
    }
    // Same identities on a generic rotation, to rounding.
    const UnitQuaternion g = UnitQuaternion::from_axis_angle_deg({1, 2, 3}, 77);
    const RawQuaternion gneg{-g.w(), -g.x(), -g.y(), -g.z()};
    ok = ok && std::abs(loss_sv(g, t, gneg, t, 1, 1) - 2.0) < 1e-15 && std::abs(loss_mv(g, t, gneg, t) - 1.0 / 3.0) < 1e-15;
    ok = ok && loss_mv(g, t, g.raw(), t) < 1e-15;
    notes = ok ? "values exact" : "value mismatch";

    Rng rng(2024);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const UnitQuaternion q = sample_uniform_rotation(rng);
        const Vec3 tt{rng.normal(), rng.normal(), rng.normal()};
        const double theta = rng.uniform(0, 180);
        std::vector<double> x{rng.normal(), rng.normal(), rng.normal(), rng.normal(),
                              rng.normal(), rng.normal(), rng.normal(), rng.uniform(0, 180)};
        for (const bool sv : {false, true}) {
            const LossGradient an = grad_loss(sv ? LossVariant::SingleView : LossVariant::MultiView, {q, tt, theta},
                                              {{x[0], x[1], x[2], x[3]}, {x[4], x[5], x[6]}, x[7]});
            const auto f = [&](const std::vector<double>& v) {
                return oracle::reference_loss(q.as_array(), {tt.x, tt.y, tt.z}, v, sv, theta, 6);
            };
            const auto fd = oracle::central_difference(f, x, 1e-5);
            const auto a = an.flatten();
            double n2 = 0, d2 = 0;
            for (std::size_t k = 0; k < 8; ++k) {
                n2 += (a[k] - fd[k]) * (a[k] - fd[k]);
                d2 += fd[k] * fd[k];
            }
            worst = std::max(worst, std::sqrt(n2 / d2));
            ok = ok && !an.non_differentiable;
        }
    }
    ok = ok && worst < 1e-4;
    return {ok, notes + ", worst gradient rel err " + num(worst) + " over 100 points x 2 losses"};
}

// 4. Canonical view pairwise angles.
Outcome canonical_view_angles() {
    const auto& views = canonical_views();
    int at90 = 0, at180 = 0, other = 0;
    std::map<long, int> hist;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            const double a = quat_angle_deg(views[i], views[j]);
            ++hist[std::lround(a)];
            if (std::abs(a - 90.0) <= 1e-9) ++at90;
            else if (std::abs(a - 180.0) <= 1e-9) ++at180;
            else ++other;
        }
    // Diagnostic: the same statistics for the directions each view looks along.
    int axis90 = 0, axis180 = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            const Vec3 a = views[i].inverse().rotate({0, 0, 1}), b = views[j].inverse().rotate({0, 0, 1});
            const double deg = rad_to_deg(std::acos(std::clamp(dot(a, b), -1.0, 1.0)));
            axis90 += std::abs(deg - 90) < 1e-9;
            axis180 += std::abs(deg - 180) < 1e-9;
        }
    std::string h;
    for (const auto& [k, c] : hist) h += (h.empty() ? "" : " ") + std::to_string(k) + "deg x" + std::to_string(c);
    const bool pass = other == 0 && at180 == 3;
    return {pass, "rotation angles: " + h + " (" + std::to_string(other) + " pairs neither 90 nor 180, " +
                      std::to_string(at180) + " at 180); view axes: " + std::to_string(axis90) + " at 90, " +
                      std::to_string(axis180) + " at 180"};
}

// 5. Geometry round trips.
Outcome geometry_round_trips() {
    const CameraIntrinsics cam;
    Rng rng(55);
    double worst_rot = 0, worst_t = 0;
    for (int i = 0; i < 1000; ++i) {
        const Pose a{sample_uniform_rotation(rng), {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(0.3, 3)}};
        const Pose b{sample_uniform_rotation(rng), {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(0.3, 3)}};
        const Pose c = entangle(a, relative_rotation(a, b), untangle(a, b, cam), cam);
        worst_rot = std::max(worst_rot, quat_angle_deg(c.rotation, b.rotation));
        worst_t = std::max(worst_t, distance(c.translation, b.translation));
    }
    const ZoomTransform z = ZoomTransform::from_bbox(expand_bbox_to_ratio({123.4, 56.7, 210.9, 98.1}, 640, 480));
    double worst_px = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const Point2 p{i * 640.0 / 9.0, j * 480.0 / 9.0};
            const Point2 r = z.invert(z.apply(p));
            worst_px = std::max({worst_px, std::abs(r.u - p.u), std::abs(r.v - p.v)});
        }
    const bool pass = worst_rot < 1e-9 && worst_t < 1e-12 && worst_px < 1e-9;
    return {pass, "pose pairs max " + num(worst_rot) + " deg / " + num(worst_t) + " m; zoom max " + num(worst_px) + " px"};
}

// 6. accuracy() against a brute-force recount.
Outcome metric_equivalence() {
    Rng rng(66);
    std::vector<PoseError> errors(1000);
    for (auto& e : errors) e = {rng.uniform(0, 12), rng.uniform(0, 12)};
    errors[0] = {2.0, 1.0};
    errors[1] = {1.0, 5.0};
    errors[2] = {10.0, 10.0};
    std::vector<double> ns;
    for (double n = 0.5; n <= 12.0; n += 0.5) ns.push_back(n);
    const AccuracyReport r = accuracy(errors, ns);
    int mismatches = 0, non_monotone = 0;
    double prev = -1;
    for (double n : ns) {
        const double got = r.accuracy.at(n);
        mismatches += got != oracle::brute_force_accuracy(errors, n);
        non_monotone += got < prev;
        prev = got;
    }
    for (double n : default_thresholds()) {
        const AccuracyReport d = accuracy(errors);
        mismatches += d.accuracy.at(n) != oracle::brute_force_accuracy(errors, n);
    }
    return {mismatches == 0 && non_monotone == 0,
            std::to_string(mismatches) + " mismatches, " + std::to_string(non_monotone) + " monotonicity violations over " +
                std::to_string(ns.size()) + " thresholds"};
}

struct Sequence {
    std::vector<TrackFrame> frames;
    std::vector<SceneHandle> scenes;
    Trajectory traj;
};

Sequence make_sequence(const TrajectorySpec& spec, const TriangleMesh& mesh, const CameraIntrinsics& cam, std::uint64_t seed) {
    Rng rng(seed);
    Sequence s;
    s.traj = generate_trajectory(sample_pose_in_frustum(cam, spec.depth, mesh, rng), spec, cam, mesh, rng);
    for (const Pose& p : s.traj.poses) {
        const DatasetRecord rec = target_for(mesh, p, cam);
        s.frames.push_back({rec.observation, rec.bbox});
        s.scenes.push_back({p});
    }
    return s;
}

// 7. Tracking state machine.
Outcome tracking_state_machine() {
    const CameraIntrinsics cam;
    const TriangleMesh mesh = make_box(0.12, 0.08, 0.05);
    const auto oracle = make_estimator("oracle", {});
    const TrackerConfig cfg;

    TrajectorySpec smooth;
    smooth.n_frames = 100;
    smooth.depth = {0.7, 1.1};
    const Sequence a = make_sequence(smooth, mesh, cam, 71);
    const auto sa = track_sequence(a.frames, mesh, cam, *oracle, cfg, &a.scenes, 1);
    int restarts_smooth = 0;
    for (const auto& s : sa) restarts_smooth += s.last_event == TrackEvent::Restarted;
    const double final_err = quat_angle_deg(sa.back().pose.rotation, a.scenes.back().true_pose.rotation);

    TrajectorySpec jump = smooth;
    jump.n_frames = 60;
    jump.discontinuities = {{40, 30.0}};
    const Sequence b = make_sequence(jump, mesh, cam, 72);
    const auto sb = track_sequence(b.frames, mesh, cam, *oracle, cfg, &b.scenes, 2);
    std::vector<int> restart_frames;
    for (const auto& s : sb)
        if (s.last_event == TrackEvent::Restarted) restart_frames.push_back(s.frame_index);

    TrajectorySpec slow = smooth;
    slow.n_frames = 30;
    slow.max_step_deg = 1.5;
    slow.max_step_m = 0.0;
    const Sequence c = make_sequence(slow, mesh, cam, 73);
    const auto sc = track_sequence(c.frames, mesh, cam, *oracle, cfg, &c.scenes, 3);
    int low = 0, held_ok = 0;
    for (std::size_t i = 1; i < sc.size(); ++i) {
        if (!(sc[i].theta_hat < 2.0)) continue;
        ++low;
        const bool same = sc[i].pose.rotation.as_array() == sc[i - 1].pose.rotation.as_array() &&
                          sc[i].pose.translation == sc[i - 1].pose.translation;
        held_ok += sc[i].last_event == TrackEvent::Held && same;
    }

    const bool pass = restarts_smooth == 0 && final_err < 1e-6 && restart_frames == std::vector<int>{40} && low > 0 &&
                      held_ok == low;
    std::string rf;
    for (int f : restart_frames) rf += (rf.empty() ? "" : ",") + std::to_string(f);
    return {pass, "smooth: " + std::to_string(restarts_smooth) + " restarts, final err " + num(final_err) +
                      " deg; jump at 40: restarts at [" + rf + "]; low-theta frames held bit-identical " +
                      std::to_string(held_ok) + "/" + std::to_string(low)};
}

// 8. (5 deg, 5 cm) accuracy against rotation noise.
Outcome noise_monotonicity() {
    ExperimentConfig cfg;
    cfg.meshes = {{"box", "builtin:box", 1.0}};
    cfg.estimator = "noisy-proportional";
    cfg.noise.sigma_theta_deg = 0.5;
    cfg.noise.sigma_trans_m = 0.001;
    cfg.noise.seed = 8;
    cfg.dataset.n_samples = 60;
    cfg.dataset.seed = 8;
    std::vector<double> acc;
    std::string text;
    for (double sigma : {0.0, 2.0, 5.0, 10.0}) {
        cfg.noise.sigma_rot_deg = sigma;
        const AccuracyReport r = run_estimation_benchmark(cfg).report;
        acc.push_back(r.accuracy.at(5.0));
        text += (text.empty() ? "" : ", ") + ("sigma " + num(sigma) + ": " + num(acc.back()) + " (2,2: " +
                                              num(r.accuracy.at(2.0)) + ")");
    }
    bool mono = true;
    for (std::size_t i = 1; i < acc.size(); ++i) mono = mono && acc[i] <= acc[i - 1];
    return {mono && acc[0] == 1.0, text};
}

// 9. Every CLI subcommand twice with the same config and seed.
Outcome cli_determinism() {
    const fs::path dir = scratch("c9");
    {
        std::ofstream cfg(dir / "config.json");
        cfg << R"({"name": "det", "meshes": ["builtin:box", "builtin:tetra"],
                  "estimator": {"name": "noisy-proportional",
                                "noise": {"sigma_rot_deg": 2, "sigma_trans_m": 0.002, "sigma_theta_deg": 1}},
                  "dataset": {"n_samples": 12, "mask_dilate_max": 20, "bbox_jitter_px": 2},
                  "trajectory": {"n_frames": 25, "discontinuities": [[15, 30.0]]}})";
    }
    const std::vector<std::string> commands{"render-views", "gen-dataset", "benchmark-estimate",
                                            "benchmark-track", "check-gradients", "selftest"};
    int compared = 0;
    std::vector<std::string> problems;
    for (const auto& cmd : commands) {
        for (const char* run_id : {"a", "b"}) {
            const fs::path out = dir / cmd / run_id;
            const int rc = run(g_cli + " " + cmd + " --config " + (dir / "config.json").string() + " --seed 99 --out " +
                               out.string());
            if (rc != 0) problems.push_back(cmd + " exit " + std::to_string(rc));
        }
        std::set<fs::path> files;
        for (const char* run_id : {"a", "b"}) {
            const fs::path root = dir / cmd / run_id;
            if (!fs::exists(root)) continue;
            for (const auto& e : fs::recursive_directory_iterator(root))
                if (e.is_regular_file()) files.insert(fs::relative(e.path(), root));
        }
        if (files.empty()) problems.push_back(cmd + " wrote nothing");
        for (const auto& f : files) {
            ++compared;
            const fs::path pa = dir / cmd / "a" / f, pb = dir / cmd / "b" / f;
            if (!fs::exists(pa) || !fs::exists(pb) || slurp(pa) != slurp(pb)) problems.push_back(cmd + "/" + f.string());
        }
    }
    std::string detail = std::to_string(compared) + " files compared across " + std::to_string(commands.size()) + " subcommands";
    if (!problems.empty()) detail += "; differing: " + problems.front() + (problems.size() > 1 ? " ..." : "");
    return {problems.empty() && compared > 0, detail};
}

// 10. Rotation sampling and dilation.
Outcome sampling_correctness() {
    Rng rng(1010);
    constexpr int kN = 100000;
    std::vector<double> angles(kN);
    for (auto& a : angles) a = deg_to_rad(sample_uniform_rotation(rng).angle_deg());
    std::sort(angles.begin(), angles.end());
    double worst = 0;
    std::string q;
    for (double p : {0.25, 0.5, 0.75}) {
        const double theta = oracle::so3_angle_quantile(p);
        const double frac = static_cast<double>(std::upper_bound(angles.begin(), angles.end(), theta) - angles.begin()) / kN;
        worst = std::max(worst, std::abs(frac - p));
        q += (q.empty() ? "" : " ") + num(frac);
    }

    Rng mrng(11);
    int violations = 0;
    for (int trial = 0; trial < 5; ++trial) {
        Mask m(160, 120);
        for (int i = 0; i < 30; ++i)
            m.set(static_cast<int>(mrng.uniform_int(0, 159)), static_cast<int>(mrng.uniform_int(0, 119)), true);
        Mask prev = m;
        for (int k = 0; k <= 40; ++k) {
            const Mask d = dilate_mask(m, k);
            violations += !prev.subset_of(d) || !m.subset_of(d);
            prev = d;
        }
    }
    return {worst < 0.02 && violations == 0,
            "CDF at 25/50/75% quantiles: " + q + " (max dev " + num(worst) + "); dilation chain violations " +
                std::to_string(violations)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mvpose acceptance suite"};
    std::vector<int> only;
    app.add_option("--cli", g_cli, "Path to the mvpose executable")->required();
    app.add_option("--criterion", only, "Run only these criteria (1-10)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle exactness", oracle_exactness},
        {"contraction convergence", contraction_convergence},
        {"loss correctness", loss_correctness},
        {"canonical views", canonical_view_angles},
        {"geometry round-trips", geometry_round_trips},
        {"metric oracle equivalence", metric_equivalence},
        {"tracking state machine", tracking_state_machine},
        {"noise monotonicity", noise_monotonicity},
        {"determinism", cli_determinism},
        {"sampling correctness", sampling_correctness},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << " (" << criteria[i].first << "): " << o.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
