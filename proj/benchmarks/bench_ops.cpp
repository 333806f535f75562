#include <benchmark/benchmark.h>

#include <random>

#include "gazelabel/gaze.hpp"
#include "gazelabel/image_ops.hpp"
#include "gazelabel/synth.hpp"

using namespace gazelabel;

namespace {

GrayImage noise_image(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GrayImage img(w, h);
    for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng() & 0xff);
    return img;
}

synth::Face sample_face() {
    synth::FaceParams p;
    p.gaze_shift = 0.25;
    p.noise_sigma = 2.0;
    p.seed = 3;
    return synth::render_face(p);
}

}  // namespace

static void BM_Otsu(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const GrayImage img = noise_image(n, n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(otsu_level(img));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Otsu)->Arg(32)->Arg(128)->Arg(512);

static void BM_Canny(benchmark::State& state) {
    const auto face = sample_face();
    for (auto _ : state) benchmark::DoNotOptimize(canny(face.image, kDefaultCannySigma, 10.0, 20.0));
}
BENCHMARK(BM_Canny);

static void BM_Hough(benchmark::State& state) {
    EdgeMap edges(64, 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            const double d = std::hypot(x - 30.3, y - 33.6);
            if (std::abs(d - 12.0) < 0.5) edges.set(x, y);
        }
    for (auto _ : state) benchmark::DoNotOptimize(hough_circles(edges, 5, 20));
}
BENCHMARK(BM_Hough);

static void BM_LabelFrame(benchmark::State& state) {
    const auto face = sample_face();
    for (auto _ : state) benchmark::DoNotOptimize(label_frame(face.image, face.landmarks));
}
BENCHMARK(BM_LabelFrame);

BENCHMARK_MAIN();
