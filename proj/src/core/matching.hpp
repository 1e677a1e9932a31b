#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/geometry.hpp"
#include "core/random.hpp"

namespace pv {

struct ImageExtent {
  int width = 0;
  int height = 0;

  double diagonal() const {
    return std::hypot(static_cast<double>(width),
                      static_cast<double>(height));
  }
  bool contains(Vec2 p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x < width && p.y < height;
  }
};

struct MatchPair {
  Vec2 p1;
  Vec2 p2;
};

// The two image extents plus the indexed list of initial correspondences.
struct MatchSet {
  ImageExtent extent1;
  ImageExtent extent2;
  std::vector<MatchPair> matches;

  // Throws InvalidInput on out-of-extent or non-finite points.
  void validate() const;
};

struct BlockCoord {
  int bx = 0;
  int by = 0;
  friend bool operator==(BlockCoord a, BlockCoord b) = default;
};

// N x N blocking of image 1; assignment depends only on p1 and extent1.
struct GridPartition {
  int n = 1;
  std::vector<BlockCoord> block_of;  // one entry per match index
};

GridPartition partition(const MatchSet& ms, int n);
BlockCoord block_of_point(Vec2 p, const ImageExtent& e, int n);

// Five correspondences realized as a shape-matched pentagon in each image.
struct PentagonPair {
  std::array<std::uint32_t, 5> indices;  // in canonical (image-1) order
  Pentagon pent1;
  Pentagon pent2;
  BlockCoord source_block;
};

enum class SampleOutcome { Found, NoMatchFound, InsufficientPoints };

// Randomized per-block trial loop: draw five matches, canonicalize by the
// image-1 points, and accept the first quintuple whose two pentagons pass the
// cross-ratio gate at tau. A degenerate draw consumes a trial.
SampleOutcome sample_block_pentagon(const MatchSet& ms,
                                    std::span<const std::uint32_t> block_indices,
                                    BlockCoord block, double tau,
                                    int trial_count, Rng& rng,
                                    PentagonPair& out,
                                    std::uint64_t* eq3_counter = nullptr);

// Runs the sampler over every block in row-major order with an independent
// RNG substream per block, collecting at most per_block_pentagons pairs each.
std::vector<PentagonPair> sample_all_blocks(const MatchSet& ms,
                                            const GridPartition& gp, double tau,
                                            int trial_count,
                                            int per_block_pentagons,
                                            std::uint64_t seed,
                                            std::uint64_t* eq3_counter = nullptr);

}  // namespace pv
