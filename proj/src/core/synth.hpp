#pragma once

#include <cstdint>
#include <vector>

#include "core/homography.hpp"
#include "core/matching.hpp"
#include "core/random.hpp"

namespace pv {

// Axis-aligned rectangle in image-1 coordinates.
struct Rect {
  double x = 0, y = 0, w = 0, h = 0;
};

struct PlaneSpec {
  Homography h;
  Rect region;
  int inlier_count = 0;
  // Draw h from the scene seed at generation time instead of using the one
  // given here.
  bool random_h = false;
};

// Ground-truth scene: known plane homographies, uniform outliers, optional
// near-miss outliers displaced 15-50 px from a true plane prediction.
struct SceneSpec {
  ImageExtent extent1;
  ImageExtent extent2;
  std::vector<PlaneSpec> planes;
  int outlier_count = 0;
  int near_miss_count = 0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

constexpr int kOutlierLabel = -1;

struct LabeledMatchSet {
  MatchSet match_set;
  std::vector<int> labels;  // plane index, or kOutlierLabel
};

// Deterministic per seed; matches are shuffled so labels are not positional.
// Throws InfeasibleSpec when the region/extent constraints cannot be met.
LabeledMatchSet generate(const SceneSpec& spec);

// Random plane homography: rotation within +-30 degrees, anisotropic scale in
// [0.5, 2], small projective terms, translation chosen so the region maps
// inside extent2; scale-balanced condition number kept below 1e4.
Homography random_scene_homography(Rng& rng, const Rect& region,
                                   const ImageExtent& extent2);

// Condition number of diag(1/scale2, 1/scale2, 1) * H * diag(scale1, scale1, 1).
// A raw pixel-coordinate homography mixes unit-scale and thousand-pixel
// entries, so its unbalanced condition says little about degeneracy; passing
// the domain and range scales measures conditioning between unit boxes.
double condition_number(const Homography& h, double scale1 = 1.0,
                        double scale2 = 1.0);

}  // namespace pv
