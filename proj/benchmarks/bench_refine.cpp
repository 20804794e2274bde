#include <benchmark/benchmark.h>

#include "mvpose/dataset.hpp"
#include "mvpose/estimator.hpp"
#include "mvpose/multi_view.hpp"
#include "mvpose/refine.hpp"

using namespace mvpose;

namespace {

struct Fixture {
    CameraIntrinsics cam;
    TriangleMesh mesh = make_box(0.12, 0.08, 0.05);
    Pose truth{UnitQuaternion::from_axis_angle_deg({0.3, 1, 0.2}, 50), {0.02, -0.01, 0.9}};
    DatasetRecord record;
    SceneHandle scene{truth};

    Fixture() {
        DatasetSpec spec;
        spec.mask_dilate_max = 0;
        Rng rng(0);
        record = make_record(mesh, truth, spec, cam, rng, "box");
    }
};

void BM_MultiViewInit(benchmark::State& state) {
    const Fixture f;
    const auto oracle = make_estimator("oracle", {});
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            multi_view_initialize(f.record.observation, f.record.bbox, f.mesh, f.cam, *oracle, {&f.scene, 0}));
    }
}
BENCHMARK(BM_MultiViewInit)->Unit(benchmark::kMillisecond);

void BM_RefineContraction(benchmark::State& state) {
    const Fixture f;
    NoiseModel noise;
    noise.gamma = 0.5;
    const auto est = make_estimator("contraction", noise);
    const Pose start{compose(UnitQuaternion::from_axis_angle_deg({1, 0, 0}, 40), f.truth.rotation), f.truth.translation};
    for (auto _ : state) {
        benchmark::DoNotOptimize(refine(start, f.record.observation, f.mesh, f.cam, *est, {}, {&f.scene, 0}));
    }
}
BENCHMARK(BM_RefineContraction)->Unit(benchmark::kMillisecond);

}  // namespace
