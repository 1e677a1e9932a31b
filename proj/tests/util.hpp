#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "core/geometry.hpp"
#include "core/matching.hpp"
#include "core/random.hpp"
#include "core/synth.hpp"

namespace testutil {

// Well-conditioned random pentagon in canonical order: generous separation
// and collinearity margins so invariance checks are not dominated by
// floating-point cancellation in near-degenerate draws.
inline pv::Pentagon random_pentagon(pv::Rng& rng, double lo = 0.0,
                                    double hi = 1000.0) {
  while (true) {
    std::array<pv::Vec2, 5> pts;
    for (auto& p : pts) p = {rng.uniform(lo, hi), rng.uniform(lo, hi)};
    const auto order = pv::canonical_order(pts);
    std::array<pv::Vec2, 5> sorted;
    for (int i = 0; i < 5; ++i) sorted[i] = pts[order[i]];

    auto pent = pv::make_pentagon(sorted, 0.02 * (hi - lo));
    if (!pent) continue;
    const double diam = pv::pentagon_diameter(*pent);
    bool well_conditioned = true;
    for (int i = 0; i < 5 && well_conditioned; ++i)
      for (int j = i + 1; j < 5 && well_conditioned; ++j)
        for (int k = j + 1; k < 5; ++k)
          if (std::abs(pv::cross(sorted[j] - sorted[i],
                                 sorted[k] - sorted[i])) <
              1e-3 * diam * diam) {
            well_conditioned = false;
            break;
          }
    if (well_conditioned) return *pent;
  }
}

inline pv::Homography random_homography(pv::Rng& rng) {
  return pv::random_scene_homography(rng, {0, 0, 1000, 1000}, {8000, 8000});
}

// Maps vertices in order (the order is inherited, never re-sorted).
inline std::optional<pv::Pentagon> map_pentagon(const pv::Homography& h,
                                                const pv::Pentagon& p) {
  pv::Pentagon out;
  for (int i = 0; i < 5; ++i) {
    auto q = h.apply(p.v[i]);
    if (!q || !q->finite()) return std::nullopt;
    out.v[i] = *q;
  }
  return out;
}

// Builds a PentagonPair the same way the sampler does: canonical order from
// the image-1 points, inherited by image 2. nullopt when either pentagon is
// degenerate or the shape gate fails.
inline std::optional<pv::PentagonPair> pair_from_matches(
    const pv::MatchSet& ms, std::array<std::uint32_t, 5> idx, double tau,
    pv::BlockCoord block = {0, 0}) {
  std::array<pv::Vec2, 5> pts1;
  for (int i = 0; i < 5; ++i) pts1[i] = ms.matches[idx[i]].p1;
  const auto order = pv::canonical_order(pts1);
  std::array<std::uint32_t, 5> sorted_idx;
  std::array<pv::Vec2, 5> c1, c2;
  for (int i = 0; i < 5; ++i) {
    sorted_idx[i] = idx[order[i]];
    c1[i] = ms.matches[sorted_idx[i]].p1;
    c2[i] = ms.matches[sorted_idx[i]].p2;
  }
  auto p1 = pv::make_pentagon(c1, pv::kSeparationRel * ms.extent1.diagonal());
  if (!p1) return std::nullopt;
  auto p2 = pv::make_pentagon(c2, pv::kSeparationRel * ms.extent2.diagonal());
  if (!p2) return std::nullopt;
  auto matched = pv::pentagons_shape_match(*p1, *p2, tau);
  if (!matched || !*matched) return std::nullopt;
  return pv::PentagonPair{sorted_idx, *p1, *p2, block};
}

// Two-plane corner scene modelled as a rigid two-view pair: both planes share
// a base similarity and a single translation, then differ by opposite
// perspective tilts and a differential scale. Plane regions occupy separate
// grid columns (for the default n=3) so no block mixes the planes.
inline pv::SceneSpec corner_scene_spec(std::uint64_t seed, double noise,
                                       int inliers_per_plane = 150) {
  pv::SceneSpec spec;
  spec.extent1 = {1000, 800};
  spec.extent2 = {2400, 2000};
  spec.noise_sigma = noise;
  spec.seed = seed;

  pv::Rng rng(pv::derive_seed(seed, 0x636f726eull, 0));
  const double theta = rng.uniform(-0.35, 0.35);
  const double s = rng.uniform(0.9, 1.6);
  const double tilt = rng.uniform(4e-4, 7e-4);
  const pv::Rect ra{30, 30, 300, 740}, rb{670, 30, 300, 740};
  auto make = [&](double px, double sx, double cx) {
    pv::Homography h;
    const double c = std::cos(theta), sn = std::sin(theta);
    h.m = {s * sx * c, -s * sn, 0.0,
           s * sx * sn, s * c,  0.0,
           px,          0.0,    1.0 - px * cx};
    return h;
  };
  const pv::Homography ha =
      make(+tilt, rng.uniform(0.85, 1.0), ra.x + ra.w / 2);
  const pv::Homography hb =
      make(-tilt, rng.uniform(1.0, 1.15), rb.x + rb.w / 2);

  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  auto grow = [&](const pv::Homography& h, const pv::Rect& r) {
    for (pv::Vec2 cpt :
         {pv::Vec2{r.x, r.y}, pv::Vec2{r.x + r.w, r.y},
          pv::Vec2{r.x + r.w, r.y + r.h}, pv::Vec2{r.x, r.y + r.h}}) {
      const auto q = h.apply(cpt);
      xlo = std::min(xlo, q->x);
      xhi = std::max(xhi, q->x);
      ylo = std::min(ylo, q->y);
      yhi = std::max(yhi, q->y);
    }
  };
  grow(ha, ra);
  grow(hb, rb);
  const double tx = (spec.extent2.width - (xhi - xlo)) / 2.0 - xlo;
  const double ty = (spec.extent2.height - (yhi - ylo)) / 2.0 - ylo;
  auto shift = [&](pv::Homography h) {
    h.m[0] += tx * h.m[6];
    h.m[1] += tx * h.m[7];
    h.m[2] += tx * h.m[8];
    h.m[3] += ty * h.m[6];
    h.m[4] += ty * h.m[7];
    h.m[5] += ty * h.m[8];
    h.normalize();
    return h;
  };
  spec.planes.push_back({shift(ha), ra, inliers_per_plane, false});
  spec.planes.push_back({shift(hb), rb, inliers_per_plane, false});
  return spec;
}

}  // namespace testutil
