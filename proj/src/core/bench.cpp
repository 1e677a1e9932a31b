#include "core/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <vector>

#include "core/geometry.hpp"
#include "core/homography.hpp"
#include "core/random.hpp"
#include "core/synth.hpp"

namespace pv {

namespace {

constexpr int kReps = 15;
constexpr std::size_t kPoolSize = 256;

volatile double g_sink = 0.0;

// Five points in general position at pixel scale.
std::array<Vec2, 5> random_quintuple(Rng& rng) {
  while (true) {
    std::array<Vec2, 5> pts;
    for (auto& p : pts) p = {rng.uniform(0.0, 1000.0), rng.uniform(0.0, 1000.0)};
    if (make_pentagon(pts, 1e-3)) return pts;
  }
}

template <typename F>
double median_eval_ns(std::uint64_t iterations, F&& body) {
  const std::uint64_t chunk = std::max<std::uint64_t>(1, iterations / kReps);
  std::vector<double> per_eval;
  per_eval.reserve(kReps);
  for (int rep = 0; rep < kReps; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < chunk; ++i) body(i);
    const auto t1 = std::chrono::steady_clock::now();
    per_eval.push_back(
        std::chrono::duration<double, std::nano>(t1 - t0).count() /
        static_cast<double>(chunk));
  }
  std::sort(per_eval.begin(), per_eval.end());
  return per_eval[per_eval.size() / 2];
}

}  // namespace

double measure_cross_ratio_ns(std::uint64_t iterations, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::array<Vec2, 5>> pool;
  pool.reserve(kPoolSize);
  for (std::size_t i = 0; i < kPoolSize; ++i)
    pool.push_back(random_quintuple(rng));
  return median_eval_ns(iterations, [&](std::uint64_t i) {
    const auto& q = pool[i % kPoolSize];
    auto cr = cross_ratio(q[0], q[1], q[2], q[3], q[4], 1e-12);
    g_sink = g_sink + (cr ? *cr : 0.0);
  });
}

double measure_homography4_ns(std::uint64_t iterations, std::uint64_t seed) {
  Rng rng(seed);
  const Rect region{0, 0, 1000, 1000};
  const ImageExtent extent2{4000, 4000};
  std::vector<std::array<MatchPair, 4>> pool;
  pool.reserve(kPoolSize);
  while (pool.size() < kPoolSize) {
    const Homography h = random_scene_homography(rng, region, extent2);
    std::array<MatchPair, 4> pts;
    bool ok = true;
    for (auto& mp : pts) {
      mp.p1 = {rng.uniform(0.0, 1000.0), rng.uniform(0.0, 1000.0)};
      auto q = h.apply(mp.p1);
      if (!q) {
        ok = false;
        break;
      }
      mp.p2 = *q;
    }
    if (!ok) continue;
    try {
      (void)estimate_homography(pts);
    } catch (const std::exception&) {
      continue;  // degenerate draw, replace it
    }
    pool.push_back(pts);
  }
  return median_eval_ns(iterations, [&](std::uint64_t i) {
    const auto& pts = pool[i % kPoolSize];
    const Homography h = estimate_homography(pts);
    g_sink = g_sink + h.m[0];
  });
}

BenchResult benchmark_costs(std::uint64_t iterations, std::uint64_t seed) {
  BenchResult r;
  r.iterations = iterations;
  r.cross_ratio_ns = measure_cross_ratio_ns(iterations, seed);
  // The homography side is far slower; cap its loop count to keep total
  // runtime bounded while keeping enough samples for a stable median.
  r.homography4_ns =
      measure_homography4_ns(std::min<std::uint64_t>(iterations, 30000), seed);
  r.ratio = r.homography4_ns / r.cross_ratio_ns;
  return r;
}

std::string serialize_bench(const BenchResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "pentaverify-bench v1\niterations %llu\ncross_ratio_ns "
                "%.3f\nhomography4_ns %.3f\nratio %.3f\n",
                static_cast<unsigned long long>(r.iterations),
                r.cross_ratio_ns, r.homography4_ns, r.ratio);
  return {buf};
}

}  // namespace pv
