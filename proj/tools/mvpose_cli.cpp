// mvpose command-line front end.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvpose/benchmark_runner.hpp"
#include "mvpose/dataset.hpp"
#include "mvpose/error.hpp"
#include "mvpose/experiment.hpp"
#include "mvpose/raster_io.hpp"
#include "mvpose/render.hpp"
#include "mvpose/sampling.hpp"
#include "mvpose/tracker.hpp"
#include "mvpose/zoom.hpp"

namespace fs = std::filesystem;
using namespace mvpose;

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", opts.seed, "Seed for dataset sampling and estimator noise");
    cmd->add_option("--out", opts.out_dir, "Output directory");
}

struct Context {
    ExperimentConfig cfg;
    fs::path out;
};

Context load(const CommonOptions& opts) {
    Context ctx;
    ctx.cfg = opts.config_path.empty() ? ExperimentConfig{} : ExperimentConfig::from_file(opts.config_path);
    if (opts.seed) ctx.cfg.override_seed(*opts.seed);
    ctx.out = opts.out_dir.empty() ? fs::path(ctx.cfg.output_dir) : fs::path(opts.out_dir);
    fs::create_directories(ctx.out);
    return ctx;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

int render_views_cmd(const CommonOptions& opts, std::optional<double> depth) {
    const Context ctx = load(opts);
    const CameraIntrinsics& cam = ctx.cfg.cam;
    for (const MeshEntry& entry : ctx.cfg.meshes) {
        const TriangleMesh mesh = load_mesh(entry.path, entry.scale);
        // Default depth puts the object diameter at half the image height.
        const double z = depth.value_or(mesh.diameter() * cam.fy / (0.5 * cam.height));
        const Vec3 t = cam.back_project({0.5 * cam.width, 0.5 * cam.height}, z);
        const auto views = render_views(mesh, t, cam);
        const fs::path dir = ctx.out / entry.id;
        fs::create_directories(dir);
        std::ofstream index(dir / "views.csv", std::ios::binary);
        index << "view,qw,qx,qy,qz,tx,ty,tz,mask_pixels\n";
        for (std::size_t i = 0; i < views.size(); ++i) {
            write_ppm((dir / ("view_" + std::to_string(i) + ".ppm")).string(), views[i].rgb);
            write_pgm((dir / ("view_" + std::to_string(i) + "_mask.pgm")).string(), views[i].mask);
            const auto q = canonical_views()[i].as_array();
            index << i << ',' << fmt(q[0]) << ',' << fmt(q[1]) << ',' << fmt(q[2]) << ',' << fmt(q[3]) << ','
                  << fmt(t.x) << ',' << fmt(t.y) << ',' << fmt(t.z) << ',' << views[i].mask.count() << '\n';
        }
        std::cout << entry.id << ": 6 views at z=" << fmt(z) << " m -> " << dir.string() << '\n';
    }
    return 0;
}

int gen_dataset_cmd(const CommonOptions& opts, std::size_t pool_size) {
    const Context ctx = load(opts);
    for (std::size_t m = 0; m < ctx.cfg.meshes.size(); ++m) {
        const MeshEntry& entry = ctx.cfg.meshes[m];
        const TriangleMesh mesh = load_mesh(entry.path, entry.scale);
        DatasetSpec spec = ctx.cfg.dataset;
        spec.seed = derive_seed(ctx.cfg.dataset.seed, {m});
        const auto records = generate_dataset(mesh, spec, ctx.cfg.cam, entry.id);
        const fs::path dir = ctx.out / entry.id;
        write_dataset(dir.string(), records);

        const auto pool = relative_pose_pool(ctx.cfg.cam, spec.depth, mesh, pool_size, derive_seed(spec.seed, {0x5354}));
        std::ofstream stats(dir / "stats.json", std::ios::binary);
        stats << StandardizationStats::from_samples(pool).to_json() << '\n';
        std::cout << entry.id << ": " << records.size() << " records -> " << dir.string() << '\n';
    }
    return 0;
}

int benchmark_estimate_cmd(const CommonOptions& opts) {
    const Context ctx = load(opts);
    const EstimationResult result = run_estimation_benchmark(ctx.cfg, ctx.out.string());
    std::cout << format_accuracy_table(ctx.cfg, result.report);
    return 0;
}

int benchmark_track_cmd(const CommonOptions& opts) {
    const Context ctx = load(opts);
    const TrackingResult result = run_tracking_benchmark(ctx.cfg, ctx.out.string());
    std::cout << "frames: " << result.frames.size() << '\n';
    for (TrackEvent e : {TrackEvent::Initialized, TrackEvent::Updated, TrackEvent::Held, TrackEvent::Restarted}) {
        const auto it = result.event_counts.find(e);
        std::cout << to_string(e) << ": " << (it == result.event_counts.end() ? 0 : it->second) << '\n';
    }
    std::cout << "rotation error deg (mean / max): " << fmt(result.mean_rot_err_deg) << " / "
              << fmt(result.max_rot_err_deg) << '\n';
    std::cout << "translation error m (mean / max): " << fmt(result.mean_trans_err_m) << " / "
              << fmt(result.max_trans_err_m) << '\n';
    return 0;
}

int check_gradients_cmd(const CommonOptions& opts, std::size_t points, double h) {
    const Context ctx = load(opts);
    const auto rows = run_gradient_check(points, ctx.cfg.noise.seed, h);
    std::ofstream csv(ctx.out / "gradients.csv", std::ios::binary);
    csv << "variant,point,rel_error\n";
    double worst = 0.0;
    for (const auto& r : rows) {
        csv << r.variant << ',' << r.point << ',' << fmt(r.rel_error) << '\n';
        worst = std::max(worst, r.rel_error);
    }
    const bool ok = worst < 1e-4;
    std::cout << rows.size() << " gradient checks, worst relative error " << fmt(worst) << (ok ? " (ok)" : " (FAILED)")
              << '\n';
    return ok ? 0 : 1;
}

int selftest_cmd(const CommonOptions& opts) {
    Context ctx = load(opts);
    std::vector<std::pair<std::string, std::function<bool()>>> checks;

    checks.emplace_back("untangle/entangle round trip", [&] {
        Rng rng(derive_seed(ctx.cfg.noise.seed, {1}));
        for (int i = 0; i < 200; ++i) {
            const Pose a = sample_pose_in_frustum(ctx.cfg.cam, ctx.cfg.dataset.depth, make_cube(0.1), rng);
            const Pose b = sample_pose_in_frustum(ctx.cfg.cam, ctx.cfg.dataset.depth, make_cube(0.1), rng);
            const Pose c = entangle(a, relative_rotation(a, b), untangle(a, b, ctx.cfg.cam), ctx.cfg.cam);
            if (quat_angle_deg(c.rotation, b.rotation) > 1e-9 || distance(c.translation, b.translation) > 1e-12) return false;
        }
        return true;
    });
    checks.emplace_back("zoom transform round trip", [&] {
        const ZoomTransform t = ZoomTransform::from_bbox({37.5, 12.25, 400, 300});
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const Point2 p{64.0 * i, 48.0 * j};
                const Point2 r = t.invert(t.apply(p));
                if (std::abs(r.u - p.u) > 1e-9 || std::abs(r.v - p.v) > 1e-9) return false;
            }
        return true;
    });
    checks.emplace_back("canonical views expose six faces", [&] {
        std::vector<std::array<long, 3>> faces;
        for (const auto& v : canonical_views()) {
            const Vec3 d = v.inverse().rotate({0, 0, -1});
            faces.push_back({std::lround(d.x), std::lround(d.y), std::lround(d.z)});
        }
        std::sort(faces.begin(), faces.end());
        return std::adjacent_find(faces.begin(), faces.end()) == faces.end();
    });
    checks.emplace_back("loss gradients match finite differences", [&] {
        for (const auto& r : run_gradient_check(20, ctx.cfg.noise.seed))
            if (!(r.rel_error < 1e-4)) return false;
        return true;
    });
    checks.emplace_back("noiseless oracle recovers every pose", [&] {
        ExperimentConfig cfg = ctx.cfg;
        cfg.estimator = "oracle";
        cfg.meshes.resize(1);
        cfg.dataset.n_samples = 5;
        const EstimationResult r = run_estimation_benchmark(cfg);
        for (const auto& [n, acc] : r.report.accuracy)
            if (acc != 1.0) return false;
        return true;
    });

    std::ofstream report(ctx.out / "selftest.txt", std::ios::binary);
    int failures = 0;
    for (const auto& [name, fn] : checks) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            std::cerr << name << ": " << e.what() << '\n';
        }
        failures += ok ? 0 : 1;
        const std::string line = std::string(ok ? "PASS " : "FAIL ") + name;
        std::cout << line << '\n';
        report << line << '\n';
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Render-and-compare pose estimation toolkit"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::optional<double> depth;
    std::size_t pool_size = 10000;
    std::size_t grad_points = 100;
    double grad_h = 1e-5;

    auto* render_views = app.add_subcommand("render-views", "Render the six canonical views of each mesh");
    add_common(render_views, opts);
    render_views->add_option("--depth", depth, "Object distance in meters");

    auto* gen_dataset = app.add_subcommand("gen-dataset", "Generate the synthetic dataset");
    add_common(gen_dataset, opts);
    gen_dataset->add_option("--pool-size", pool_size, "Samples used for standardization statistics")
        ->check(CLI::PositiveNumber);

    auto* bench_estimate = app.add_subcommand("benchmark-estimate", "Multi-view init + refinement accuracy benchmark");
    add_common(bench_estimate, opts);

    auto* bench_track = app.add_subcommand("benchmark-track", "Tracking benchmark on a generated trajectory");
    add_common(bench_track, opts);

    auto* check_gradients = app.add_subcommand("check-gradients", "Compare loss gradients with finite differences");
    add_common(check_gradients, opts);
    check_gradients->add_option("--points", grad_points, "Random points per loss")->check(CLI::PositiveNumber);
    check_gradients->add_option("--step", grad_h, "Finite-difference step")->check(CLI::PositiveNumber);

    auto* selftest = app.add_subcommand("selftest", "Quick internal consistency checks");
    add_common(selftest, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*render_views) return render_views_cmd(opts, depth);
        if (*gen_dataset) return gen_dataset_cmd(opts, pool_size);
        if (*bench_estimate) return benchmark_estimate_cmd(opts);
        if (*bench_track) return benchmark_track_cmd(opts);
        if (*check_gradients) return check_gradients_cmd(opts, grad_points, grad_h);
        if (*selftest) return selftest_cmd(opts);
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
