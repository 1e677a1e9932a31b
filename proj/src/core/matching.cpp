#include "core/matching.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace pv {

void MatchSet::validate() const {
  if (extent1.width < 1 || extent1.height < 1 || extent2.width < 1 ||
      extent2.height < 1)
    throw InvalidInput("image extents must be at least 1x1");
  for (std::size_t i = 0; i < matches.size(); ++i) {
    const auto& m = matches[i];
    if (!m.p1.finite() || !m.p2.finite())
      throw InvalidInput("match " + std::to_string(i) +
                         ": non-finite coordinate");
    if (!extent1.contains(m.p1))
      throw InvalidInput("match " + std::to_string(i) +
                         ": p1 outside image 1 extent");
    if (!extent2.contains(m.p2))
      throw InvalidInput("match " + std::to_string(i) +
                         ": p2 outside image 2 extent");
  }
}

BlockCoord block_of_point(Vec2 p, const ImageExtent& e, int n) {
  auto clamp_block = [n](double t) {
    int b = static_cast<int>(std::floor(t));
    return std::clamp(b, 0, n - 1);
  };
  return {clamp_block(p.x * n / e.width), clamp_block(p.y * n / e.height)};
}

GridPartition partition(const MatchSet& ms, int n) {
  GridPartition gp;
  gp.n = n;
  gp.block_of.reserve(ms.matches.size());
  for (const auto& m : ms.matches)
    gp.block_of.push_back(block_of_point(m.p1, ms.extent1, n));
  return gp;
}

SampleOutcome sample_block_pentagon(const MatchSet& ms,
                                    std::span<const std::uint32_t> block_indices,
                                    BlockCoord block, double tau,
                                    int trial_count, Rng& rng,
                                    PentagonPair& out,
                                    std::uint64_t* eq3_counter) {
  if (block_indices.size() < 5) return SampleOutcome::InsufficientPoints;

  const double eps_sep1 = kSeparationRel * ms.extent1.diagonal();
  const double eps_sep2 = kSeparationRel * ms.extent2.diagonal();

  std::vector<std::uint32_t> pool(block_indices.begin(), block_indices.end());
  for (int trial = 0; trial < trial_count; ++trial) {
    // Partial Fisher-Yates: five distinct indices into the front of the pool.
    for (std::size_t i = 0; i < 5; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }

    std::array<Vec2, 5> pts1;
    for (int i = 0; i < 5; ++i) pts1[i] = ms.matches[pool[i]].p1;
    const auto order = canonical_order(pts1);

    std::array<std::uint32_t, 5> idx;
    std::array<Vec2, 5> c1, c2;
    for (int i = 0; i < 5; ++i) {
      idx[i] = pool[order[i]];
      c1[i] = ms.matches[idx[i]].p1;
      c2[i] = ms.matches[idx[i]].p2;
    }

    auto pent1 = make_pentagon(c1, eps_sep1);
    if (!pent1) continue;
    auto pent2 = make_pentagon(c2, eps_sep2);
    if (!pent2) continue;

    auto matched = pentagons_shape_match(*pent1, *pent2, tau, eq3_counter);
    if (matched && *matched) {
      out = PentagonPair{idx, *pent1, *pent2, block};
      return SampleOutcome::Found;
    }
  }
  return SampleOutcome::NoMatchFound;
}

std::vector<PentagonPair> sample_all_blocks(const MatchSet& ms,
                                            const GridPartition& gp, double tau,
                                            int trial_count,
                                            int per_block_pentagons,
                                            std::uint64_t seed,
                                            std::uint64_t* eq3_counter) {
  const int n = gp.n;
  std::vector<std::vector<std::uint32_t>> blocks(
      static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < gp.block_of.size(); ++i) {
    const auto b = gp.block_of[i];
    blocks[static_cast<std::size_t>(b.by) * n + b.bx].push_back(
        static_cast<std::uint32_t>(i));
  }

  std::vector<PentagonPair> found;
  for (int by = 0; by < n; ++by) {
    for (int bx = 0; bx < n; ++bx) {
      const auto& pool = blocks[static_cast<std::size_t>(by) * n + bx];
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(bx),
                          static_cast<std::uint64_t>(by)));
      for (int k = 0; k < per_block_pentagons; ++k) {
        PentagonPair pair;
        auto outcome = sample_block_pentagon(ms, pool, {bx, by}, tau,
                                             trial_count, rng, pair,
                                             eq3_counter);
        if (outcome != SampleOutcome::Found) break;
        found.push_back(pair);
      }
    }
  }
  return found;
}

}  // namespace pv
