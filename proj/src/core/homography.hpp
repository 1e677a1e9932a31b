#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "core/matching.hpp"

namespace pv {

// 3x3 projective map from image-1 to image-2 coordinates, row-major,
// scale-normalized to unit Frobenius norm with m[8] >= 0.
struct Homography {
  std::array<double, 9> m{};

  // nullopt when the point lies (numerically) on the line at infinity.
  std::optional<Vec2> apply(Vec2 p) const {
    const double w = m[6] * p.x + m[7] * p.y + m[8];
    if (std::abs(w) < 1e-18) return std::nullopt;
    return Vec2{(m[0] * p.x + m[1] * p.y + m[2]) / w,
                (m[3] * p.x + m[4] * p.y + m[5]) / w};
  }

  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }

  // Rescale so the Frobenius norm is 1 and m[8] >= 0.
  void normalize();
};

// Least-squares DLT with Hartley coordinate pre-normalization.
// Throws DegenerateConfiguration (<4 pairs, collinear image-1 points) or
// NumericalFailure (null direction not isolated).
Homography estimate_homography(std::span<const MatchPair> points);

struct PlanarGroup;  // planar.hpp

// Fit each group's homography from the deduplicated point pairs of its member
// matches; groups whose estimation fails are dropped (diagnostic appended to
// *diagnostics when given) and surviving groups renumbered 0..k-1.
std::vector<PlanarGroup> fit_group_homographies(
    std::vector<PlanarGroup> groups, const MatchSet& ms,
    std::vector<std::string>* diagnostics = nullptr);

struct MatchVerdict {
  std::uint32_t match_index = 0;
  bool correct = false;
  int group_id = -1;       // valid when correct
  double error = 0.0;      // reprojection error; min over groups if incorrect
};

// One verdict per match: Correct with the minimum-error group when that
// minimum is within pixel_threshold, else Incorrect carrying the minimum.
std::vector<MatchVerdict> classify_matches(const MatchSet& ms,
                                           const std::vector<PlanarGroup>& groups,
                                           double pixel_threshold);

}  // namespace pv
