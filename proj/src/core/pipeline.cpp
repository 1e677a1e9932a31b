#include "core/pipeline.hpp"

#include <chrono>

#include "core/errors.hpp"

namespace pv {

void Config::validate() const {
  if (grid_n < 1) throw InvalidInput("grid_n must be >= 1");
  if (!(cr_tau > 0.0 && cr_tau < 1.0))
    throw InvalidInput("cr_tau must be in (0, 1)");
  if (trial_count < 0) throw InvalidInput("trial_count must be >= 0");
  if (per_block_pentagons < 1)
    throw InvalidInput("per_block_pentagons must be >= 1");
  if (merge_m < 1 || merge_m > 4)
    throw InvalidInput("merge_m must be in [1, 4]");
  if (merge_mixes < 1) throw InvalidInput("merge_mixes must be >= 1");
  if (!(pixel_threshold > 0.0))
    throw InvalidInput("pixel_threshold must be > 0");
}

VerificationReport run(const MatchSet& ms, const Config& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ms.validate();
  cfg.validate();

  VerificationReport report;
  report.config = cfg;

  const auto gp = partition(ms, cfg.grid_n);
  auto pairs = sample_all_blocks(ms, gp, cfg.cr_tau, cfg.trial_count,
                                 cfg.per_block_pentagons, cfg.seed,
                                 &report.eq3_evaluations);

  auto [kept, rejected] = reject_inconsistent_pentagons(pairs);
  report.kept = kept;
  report.rejected = std::move(rejected);

  MergeParams mp;
  mp.tau = cfg.cr_tau;
  mp.m = cfg.merge_m;
  mp.mixes = cfg.merge_mixes;
  mp.second_pentagon = cfg.second_mixed_pentagon;
  mp.eps_sep1 = kSeparationRel * ms.extent1.diagonal();
  mp.eps_sep2 = kSeparationRel * ms.extent2.diagonal();

  Rng merge_rng(derive_seed(cfg.seed, 0x6d65726765ull, 0));  // merge substream
  auto groups =
      build_planar_groups(kept, mp, merge_rng, &report.eq3_evaluations);
  report.groups =
      fit_group_homographies(std::move(groups), ms, &report.diagnostics);

  report.verdicts = classify_matches(ms, report.groups, cfg.pixel_threshold);
  report.no_plane_found = report.groups.empty();

  report.per_group_correct.assign(report.groups.size(), 0);
  for (const auto& v : report.verdicts) {
    if (v.correct) {
      ++report.correct_count;
      ++report.per_group_correct[static_cast<std::size_t>(v.group_id)];
    } else {
      ++report.incorrect_count;
    }
  }

  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  return report;
}

}  // namespace pv
