#include "core/planar.hpp"

#include <algorithm>

namespace pv {

namespace {

Vec2 centroid(const Pentagon& p) {
  Vec2 c{};
  for (const auto& v : p.v) c = c + v;
  return 0.2 * c;
}

int sgn(double x) { return (x > 0) - (x < 0); }

// Inverted relative order along either axis; a zero sign never violates.
bool order_inverted(Vec2 d1, Vec2 d2) {
  return sgn(d1.x) * sgn(d2.x) < 0 || sgn(d1.y) * sgn(d2.y) < 0;
}

}  // namespace

std::pair<std::vector<PentagonPair>, std::vector<PentagonPair>>
reject_inconsistent_pentagons(const std::vector<PentagonPair>& pairs) {
  const std::size_t k = pairs.size();
  if (k <= 2) return {pairs, {}};

  std::vector<Vec2> c1(k), c2(k);
  for (std::size_t i = 0; i < k; ++i) {
    c1[i] = centroid(pairs[i].pent1);
    c2[i] = centroid(pairs[i].pent2);
  }

  std::vector<PentagonPair> kept, rejected;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t violations = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      if (order_inverted(c1[j] - c1[i], c2[j] - c2[i])) ++violations;
    }
    if (2 * violations > k - 1)
      rejected.push_back(pairs[i]);
    else
      kept.push_back(pairs[i]);
  }
  return {kept, rejected};
}

namespace {

// Builds the mixed pentagon pair taking slots in `from_a` from pa and the
// rest from pb, re-canonicalized around the mixed image-1 centroid.
bool mixed_pentagons_match(const PentagonPair& pa, const PentagonPair& pb,
                           const std::array<bool, 5>& from_a,
                           const MergeParams& params,
                           std::uint64_t* eq3_counter) {
  std::array<Vec2, 5> pts1, pts2;
  for (int s = 0; s < 5; ++s) {
    const PentagonPair& src = from_a[s] ? pa : pb;
    pts1[s] = src.pent1.v[s];
    pts2[s] = src.pent2.v[s];
  }
  const auto order = canonical_order(pts1);
  std::array<Vec2, 5> c1, c2;
  for (int i = 0; i < 5; ++i) {
    c1[i] = pts1[order[i]];
    c2[i] = pts2[order[i]];
  }
  auto pent1 = make_pentagon(c1, params.eps_sep1);
  if (!pent1) return false;
  auto pent2 = make_pentagon(c2, params.eps_sep2);
  if (!pent2) return false;
  auto matched = pentagons_shape_match(*pent1, *pent2, params.tau, eq3_counter);
  return matched && *matched;
}

}  // namespace

bool try_merge(const PentagonPair& pa, const PentagonPair& pb,
               const MergeParams& params, Rng& rng,
               std::uint64_t* eq3_counter) {
  for (int mix = 0; mix < params.mixes; ++mix) {
    std::array<int, 5> slots{0, 1, 2, 3, 4};
    for (int i = 0; i < params.m; ++i) {
      int j = i + static_cast<int>(rng.below(5 - i));
      std::swap(slots[i], slots[j]);
    }
    std::array<bool, 5> from_a{};
    for (int i = 0; i < params.m; ++i) from_a[slots[i]] = true;

    if (!mixed_pentagons_match(pa, pb, from_a, params, eq3_counter)) continue;
    if (params.second_pentagon) {
      std::array<bool, 5> complement{};
      for (int s = 0; s < 5; ++s) complement[s] = !from_a[s];
      if (!mixed_pentagons_match(pa, pb, complement, params, eq3_counter))
        continue;
    }
    return true;
  }
  return false;
}

std::vector<PlanarGroup> build_planar_groups(
    const std::vector<PentagonPair>& pairs, const MergeParams& params,
    Rng& rng, std::uint64_t* eq3_counter) {
  std::vector<PlanarGroup> groups;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool merged = false;
    for (auto& g : groups) {
      const PentagonPair& rep = pairs[g.pentagon_ids.front()];
      if (try_merge(pairs[i], rep, params, rng, eq3_counter)) {
        g.pentagon_ids.push_back(i);
        merged = true;
        break;
      }
    }
    if (!merged) {
      PlanarGroup g;
      g.id = static_cast<int>(groups.size());
      g.pentagon_ids.push_back(i);
      groups.push_back(std::move(g));
    }
  }
  for (auto& g : groups) {
    for (auto pid : g.pentagon_ids)
      g.member_matches.insert(g.member_matches.end(),
                              pairs[pid].indices.begin(),
                              pairs[pid].indices.end());
    std::sort(g.member_matches.begin(), g.member_matches.end());
    g.member_matches.erase(
        std::unique(g.member_matches.begin(), g.member_matches.end()),
        g.member_matches.end());
  }
  return groups;
}

}  // namespace pv
