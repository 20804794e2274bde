#include <benchmark/benchmark.h>

#include "mvpose/mesh.hpp"
#include "mvpose/raster.hpp"
#include "mvpose/render.hpp"
#include "mvpose/zoom.hpp"

using namespace mvpose;

namespace {

void BM_RenderSphere(benchmark::State& state) {
    const CameraIntrinsics cam;
    const TriangleMesh mesh = make_uv_sphere(0.05, static_cast<int>(state.range(0)), 2 * static_cast<int>(state.range(0)));
    const Pose pose{UnitQuaternion::from_axis_angle_deg({1, 1, 0}, 30), {0, 0, 0.5}};
    for (auto _ : state) benchmark::DoNotOptimize(render(mesh, pose, cam));
    state.counters["triangles"] = static_cast<double>(mesh.triangles().size());
}
BENCHMARK(BM_RenderSphere)->Arg(12)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_RenderViews(benchmark::State& state) {
    const CameraIntrinsics cam;
    const TriangleMesh mesh = make_box(0.12, 0.08, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(render_views(mesh, {0, 0, 0.6}, cam));
}
BENCHMARK(BM_RenderViews)->Unit(benchmark::kMillisecond);

void BM_ZoomCrop(benchmark::State& state) {
    Image img(640, 480, {90, 120, 200});
    const BBox crop = expand_bbox_to_ratio({200, 150, 120, 100}, 640, 480);
    for (auto _ : state) benchmark::DoNotOptimize(zoom_crop(img, crop));
}
BENCHMARK(BM_ZoomCrop)->Unit(benchmark::kMillisecond);

void BM_DilateMask(benchmark::State& state) {
    Mask m(640, 480);
    for (int y = 200; y < 280; ++y)
        for (int x = 280; x < 360; ++x) m.set(x, y, true);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dilate_mask(m, k));
}
BENCHMARK(BM_DilateMask)->Arg(4)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
