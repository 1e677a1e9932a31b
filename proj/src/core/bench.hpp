#pragma once

#include <cstdint>
#include <string>

namespace pv {

struct BenchResult {
  std::uint64_t iterations = 0;
  double cross_ratio_ns = 0.0;
  double homography4_ns = 0.0;
  double ratio = 0.0;  // homography4_ns / cross_ratio_ns
};

// Median per-evaluation wall time of one cross-ratio evaluation vs one
// 4-point homography estimate, on pre-generated random valid inputs.
BenchResult benchmark_costs(std::uint64_t iterations,
                            std::uint64_t seed = 0x62656e6368ull);

// Exposed for self-comparison sanity checks.
double measure_cross_ratio_ns(std::uint64_t iterations, std::uint64_t seed);
double measure_homography4_ns(std::uint64_t iterations, std::uint64_t seed);

std::string serialize_bench(const BenchResult& r);

}  // namespace pv
