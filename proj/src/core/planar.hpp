#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core/homography.hpp"
#include "core/matching.hpp"
#include "core/random.hpp"

namespace pv {

// A set of merged pentagon pairs asserting one scene plane.
struct PlanarGroup {
  int id = 0;
  std::vector<std::size_t> pentagon_ids;       // indices into the kept list
  std::vector<std::uint32_t> member_matches;   // sorted union of indices
  std::optional<Homography> homography;
};

// Step A: drop pentagon pairs whose image-2 centroid ordering relative to the
// other pentagons is inverted against more than half of its peers. Vacuous
// for two or fewer pentagons.
std::pair<std::vector<PentagonPair>, std::vector<PentagonPair>>
reject_inconsistent_pentagons(const std::vector<PentagonPair>& pairs);

struct MergeParams {
  double tau = 0.05;
  int m = 3;       // vertices taken from the first pentagon per mix
  int mixes = 5;   // random splits before declaring non-merge
  bool second_pentagon = true;
  double eps_sep1 = 0.0;
  double eps_sep2 = 0.0;
};

// Vertex-mixing coplanarity test: for some random slot split, both mixed
// pentagon pairs (m from pa + n from pb, and the complement) pass the
// cross-ratio gate. Degenerate mixed pentagons fail that split.
bool try_merge(const PentagonPair& pa, const PentagonPair& pb,
               const MergeParams& params, Rng& rng,
               std::uint64_t* eq3_counter = nullptr);

// Steps B-D: greedy first-fit grouping against each group's founding
// pentagon, in input order.
std::vector<PlanarGroup> build_planar_groups(
    const std::vector<PentagonPair>& pairs, const MergeParams& params,
    Rng& rng, std::uint64_t* eq3_counter = nullptr);

}  // namespace pv
