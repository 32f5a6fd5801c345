// Serial reference vs OpenMP kernels on one synthetic stack.

#include <benchmark/benchmark.h>

#include <random>

#include "huecomp/crf.hpp"
#include "huecomp/fusion.hpp"
#include "huecomp/hdr.hpp"
#include "huecomp/hueplane.hpp"
#include "huecomp/metrics.hpp"
#include "huecomp/pyramid.hpp"
#include "support/scenes.hpp"

using namespace huecomp;

namespace {

constexpr std::size_t kW = 512;
constexpr std::size_t kH = 384;

struct Fixture {
    RadianceMap scene = testing::make_scene(testing::Scene::window, kW, kH);
    ExposureStack stack = synth_stack(scene, std::vector<double>{-2, -1, 0, 1, 2});
    CrfTable crf = estimate_inverse_crf(stack);
    RadianceMap radiance = recover_radiance(stack, crf);
    LdrImage fused = huecomp::fuse(stack);
    LdrImage reference = render_reference(scene);
    Plane plane = [] {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Plane p(kW, kH);
        for (double& v : p.data) v = u(rng);
        return p;
    }();
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

void compensate_parallel(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(compensate_image(fx().fused, fx().radiance));
}
void compensate_serial(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(reference::compensate_image(fx().fused, fx().radiance));
}

void pyr_down_parallel(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(pyr_down(fx().plane));
}
void pyr_down_serial(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(reference::pyr_down(fx().plane));
}

void fuse_parallel(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(huecomp::fuse(fx().stack));
}
void fuse_serial(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(reference::fuse(fx().stack));
}

void merge_parallel(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(recover_radiance(fx().stack, fx().crf));
}
void merge_serial(benchmark::State& s) {
    const auto t = fx().stack.log_exposure_times();
    for (auto _ : s) {
        benchmark::DoNotOptimize(
            reference::recover_radiance(fx().stack.images(), t, fx().crf, fx().stack.middle_index()));
    }
}

void hue_diff_parallel(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(image_hue_diff(fx().fused, fx().reference));
}
void hue_diff_serial(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(reference::image_hue_diff(fx().fused, fx().reference));
}

}  // namespace

BENCHMARK(compensate_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(compensate_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(pyr_down_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(pyr_down_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(fuse_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(fuse_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(merge_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(merge_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(hue_diff_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(hue_diff_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
    fx();  // build the stack outside the timed loops
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
