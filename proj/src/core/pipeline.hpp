#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/homography.hpp"
#include "core/matching.hpp"
#include "core/planar.hpp"

namespace pv {

struct Config {
  int grid_n = 3;
  double cr_tau = 0.05;
  int trial_count = 1000;
  int per_block_pentagons = 1;
  int merge_m = 3;
  int merge_mixes = 5;
  bool second_mixed_pentagon = true;
  double pixel_threshold = 10.0;
  std::uint64_t seed = 0;

  // Throws InvalidInput when a field is out of range.
  void validate() const;
};

struct VerificationReport {
  Config config;
  std::vector<PentagonPair> kept;
  std::vector<PentagonPair> rejected;
  std::vector<PlanarGroup> groups;
  std::vector<MatchVerdict> verdicts;
  std::uint64_t correct_count = 0;
  std::uint64_t incorrect_count = 0;
  std::vector<std::uint64_t> per_group_correct;  // indexed by group id
  std::uint64_t eq3_evaluations = 0;
  double wall_time_ms = 0.0;  // informational; not serialized
  bool no_plane_found = false;
  std::vector<std::string> diagnostics;
};

// Partition -> sample -> reject -> merge -> fit -> classify.
// Deterministic given (ms, cfg). When no plane survives, every match is
// Incorrect and no_plane_found is set.
VerificationReport run(const MatchSet& ms, const Config& cfg);

}  // namespace pv
