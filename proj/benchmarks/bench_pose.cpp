#include <benchmark/benchmark.h>

#include <vector>

#include "mvpose/loss.hpp"
#include "mvpose/pose.hpp"
#include "mvpose/random.hpp"
#include "mvpose/sampling.hpp"

using namespace mvpose;

namespace {

void BM_UniformRotation(benchmark::State& state) {
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_uniform_rotation(rng));
}
BENCHMARK(BM_UniformRotation);

void BM_UntangleEntangle(benchmark::State& state) {
    const CameraIntrinsics cam;
    Rng rng(2);
    std::vector<std::pair<Pose, Pose>> pairs;
    for (int i = 0; i < 256; ++i) {
        pairs.push_back({{sample_uniform_rotation(rng), {rng.uniform(-0.1, 0.1), 0.0, rng.uniform(0.5, 1.5)}},
                         {sample_uniform_rotation(rng), {0.0, rng.uniform(-0.1, 0.1), rng.uniform(0.5, 1.5)}}});
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ & 255];
        benchmark::DoNotOptimize(entangle(a, relative_rotation(a, b), untangle(a, b, cam), cam));
    }
}
BENCHMARK(BM_UntangleEntangle);

void BM_GradLoss(benchmark::State& state) {
    const LossTarget target{UnitQuaternion::from_axis_angle_deg({1, 2, 3}, 40), {0.1, 0.2, 0.3}, 12.0};
    const LossEstimate est{{0.9, 0.1, -0.2, 0.3}, {0.05, 0.25, 0.2}, 9.0};
    for (auto _ : state) benchmark::DoNotOptimize(grad_loss(LossVariant::SingleView, target, est));
}
BENCHMARK(BM_GradLoss);

}  // namespace
