#include "core/synth.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "core/errors.hpp"

namespace pv {

namespace {

constexpr int kMaxRedraws = 1000;

std::array<Vec2, 4> rect_corners(const Rect& r) {
  return {Vec2{r.x, r.y}, Vec2{r.x + r.w, r.y}, Vec2{r.x + r.w, r.y + r.h},
          Vec2{r.x, r.y + r.h}};
}

// The rectangle maps inside extent2 iff all four corner images do and the
// projective denominator stays positive on the rectangle.
bool region_maps_inside(const Homography& h, const Rect& r,
                        const ImageExtent& e2) {
  for (const Vec2 c : rect_corners(r)) {
    const double w = h.m[6] * c.x + h.m[7] * c.y + h.m[8];
    if (w <= 0.0) return false;
    auto q = h.apply(c);
    if (!q || !e2.contains(*q)) return false;
  }
  return true;
}

}  // namespace

double condition_number(const Homography& h, double scale1, double scale2) {
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = h.m[3 * r + c];
  const Eigen::Vector3d d1{scale1, scale1, 1.0};
  const Eigen::Vector3d d2{1.0 / scale2, 1.0 / scale2, 1.0};
  m = d2.asDiagonal() * m * d1.asDiagonal();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
  const auto& s = svd.singularValues();
  return s(0) / s(2);
}

Homography random_scene_homography(Rng& rng, const Rect& region,
                                   const ImageExtent& extent2) {
  // Cap the projective terms so the homogeneous denominator varies by at most
  // ~15% across the region; a per-pixel bound alone lets perspective squash
  // a large region into a sliver, which is no longer a plausible plane view.
  const double diam = std::hypot(region.w, region.h);
  const double pmax = std::min(1e-3, 0.15 / diam);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const double theta =
        rng.uniform(-std::numbers::pi / 6.0, std::numbers::pi / 6.0);
    const double s1 = rng.uniform(0.5, 2.0);
    const double s2 = rng.uniform(0.5, 2.0);
    const double p1 = rng.uniform(-pmax, pmax);
    const double p2 = rng.uniform(-pmax, pmax);

    Homography h;
    h.m = {s1 * std::cos(theta), -s2 * std::sin(theta), 0.0,
           s1 * std::sin(theta), s2 * std::cos(theta),  0.0,
           p1,                   p2,                    1.0};

    // Translation range keeping every corner image inside extent2 (with a
    // small margin), solved per corner since the denominator varies.
    const double margin = 1.0;
    double tx_lo = -std::numeric_limits<double>::infinity();
    double tx_hi = std::numeric_limits<double>::infinity();
    double ty_lo = tx_lo, ty_hi = tx_hi;
    bool ok = true;
    for (const Vec2 c : rect_corners(region)) {
      const double w = h.m[6] * c.x + h.m[7] * c.y + h.m[8];
      if (w <= 0.0) {
        ok = false;
        break;
      }
      const double bx = (h.m[0] * c.x + h.m[1] * c.y) / w;
      const double by = (h.m[3] * c.x + h.m[4] * c.y) / w;
      tx_lo = std::max(tx_lo, (margin - bx) * w);
      tx_hi = std::min(tx_hi, (extent2.width - margin - bx) * w);
      ty_lo = std::max(ty_lo, (margin - by) * w);
      ty_hi = std::min(ty_hi, (extent2.height - margin - by) * w);
    }
    if (!ok || tx_lo >= tx_hi || ty_lo >= ty_hi) continue;
    h.m[2] = rng.uniform(tx_lo, tx_hi);
    h.m[5] = rng.uniform(ty_lo, ty_hi);
    h.normalize();

    if (condition_number(h, std::hypot(region.w, region.h),
                         extent2.diagonal()) >= 1e4)
      continue;
    if (!region_maps_inside(h, region, extent2)) continue;
    return h;
  }
  throw InfeasibleSpec("could not draw a homography mapping the region into "
                       "the second image extent");
}

LabeledMatchSet generate(const SceneSpec& spec) {
  if (spec.outlier_count < 0 || spec.near_miss_count < 0 ||
      spec.noise_sigma < 0.0)
    throw InfeasibleSpec("counts and noise sigma must be non-negative");
  for (const auto& plane : spec.planes) {
    const Rect& r = plane.region;
    if (plane.inlier_count < 0) throw InfeasibleSpec("negative inlier count");
    if (r.w <= 0 || r.h <= 0 || r.x < 0 || r.y < 0 ||
        r.x + r.w > spec.extent1.width || r.y + r.h > spec.extent1.height)
      throw InfeasibleSpec("plane region outside image 1 extent");
    if (!plane.random_h && !region_maps_inside(plane.h, r, spec.extent2))
      throw InfeasibleSpec(
          "plane homography maps its region outside image 2 extent");
  }

  Rng rng(spec.seed);
  LabeledMatchSet out;
  out.match_set.extent1 = spec.extent1;
  out.match_set.extent2 = spec.extent2;

  std::vector<PlaneSpec> planes = spec.planes;
  for (std::size_t k = 0; k < planes.size(); ++k) {
    if (planes[k].random_h) {
      Rng hrng(derive_seed(spec.seed, 0x68u, k));
      planes[k].h = random_scene_homography(hrng, planes[k].region,
                                            spec.extent2);
    }
  }

  auto draw_in = [&rng](const Rect& r) {
    return Vec2{rng.uniform(r.x, r.x + r.w), rng.uniform(r.y, r.y + r.h)};
  };

  for (std::size_t k = 0; k < planes.size(); ++k) {
    const auto& plane = planes[k];
    const double sigma = spec.noise_sigma;
    for (int i = 0; i < plane.inlier_count; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const Vec2 p1 = draw_in(plane.region);
        auto p2 = plane.h.apply(p1);
        if (!p2) continue;
        if (sigma > 0.0) {
          double dx, dy;
          do {
            dx = sigma * rng.gaussian();
            dy = sigma * rng.gaussian();
          } while (dx * dx + dy * dy > 9.0 * sigma * sigma);
          *p2 = *p2 + Vec2{dx, dy};
        }
        if (!spec.extent2.contains(*p2)) continue;
        out.match_set.matches.push_back({p1, *p2});
        out.labels.push_back(static_cast<int>(k));
        placed = true;
        break;
      }
      if (!placed)
        throw InfeasibleSpec("could not place an inlier inside image 2");
    }
  }

  for (int i = 0; i < spec.near_miss_count; ++i) {
    if (planes.empty())
      throw InfeasibleSpec("near-miss outliers need at least one plane");
    bool placed = false;
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      const auto& plane =
          planes[static_cast<std::size_t>(rng.below(planes.size()))];
      const Vec2 p1 = draw_in(plane.region);
      auto base = plane.h.apply(p1);
      if (!base) continue;
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double radius = rng.uniform(15.0, 50.0);
      const Vec2 p2 = *base + Vec2{radius * std::cos(angle),
                                   radius * std::sin(angle)};
      if (!spec.extent2.contains(p2)) continue;
      out.match_set.matches.push_back({p1, p2});
      out.labels.push_back(kOutlierLabel);
      placed = true;
      break;
    }
    if (!placed)
      throw InfeasibleSpec("could not place a near-miss outlier");
  }

  const Rect full1{0, 0, static_cast<double>(spec.extent1.width),
                   static_cast<double>(spec.extent1.height)};
  const Rect full2{0, 0, static_cast<double>(spec.extent2.width),
                   static_cast<double>(spec.extent2.height)};
  for (int i = 0; i < spec.outlier_count; ++i) {
    out.match_set.matches.push_back({draw_in(full1), draw_in(full2)});
    out.labels.push_back(kOutlierLabel);
  }

  // Seeded shuffle so labels are not positional.
  std::vector<std::size_t> perm(out.match_set.matches.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  rng.shuffle(perm.begin(), perm.end());
  LabeledMatchSet shuffled;
  shuffled.match_set.extent1 = out.match_set.extent1;
  shuffled.match_set.extent2 = out.match_set.extent2;
  shuffled.match_set.matches.reserve(perm.size());
  shuffled.labels.reserve(perm.size());
  for (std::size_t i : perm) {
    shuffled.match_set.matches.push_back(out.match_set.matches[i]);
    shuffled.labels.push_back(out.labels[i]);
  }
  return shuffled;
}

}  // namespace pv
