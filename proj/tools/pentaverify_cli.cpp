// Command-line front end over the pentaverify C API.
//
// Exit codes: 0 success, 1 invalid input, 2 no plane found.

#include <cinttypes>
#include <cstdio>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "pentaverify.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNoPlane = 2;

int fail(const char* context) {
  std::fprintf(stderr, "pentaverify: %s: %s\n", context, pv_last_error());
  return kExitInvalid;
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

int run_verify(const std::string& matches_path, pv_config cfg, bool has_seed,
               const std::string& report_path, const std::string& svg_path) {
  if (!has_seed) {
    cfg.seed = entropy_seed();
    std::printf("seed %" PRIu64 "\n", cfg.seed);
  }

  pv_matchset* ms = nullptr;
  if (pv_matchset_load(matches_path.c_str(), &ms) != PV_OK)
    return fail("loading matches");

  pv_report* report = nullptr;
  if (pv_verify(ms, &cfg, &report) != PV_OK) {
    pv_matchset_free(ms);
    return fail("verify");
  }

  std::printf("matches %" PRIu64 " correct %" PRIu64 " incorrect %" PRIu64
              " groups %" PRIu64 " eq3 %" PRIu64 " wall_ms %.2f\n",
              pv_report_match_count(report), pv_report_correct_count(report),
              pv_report_incorrect_count(report), pv_report_group_count(report),
              pv_report_eq3_evaluations(report),
              pv_report_wall_time_ms(report));

  int rc = pv_report_no_plane_found(report) ? kExitNoPlane : kExitOk;
  if (!report_path.empty() &&
      pv_report_save(report, report_path.c_str()) != PV_OK)
    rc = fail("writing report");
  if (!svg_path.empty() &&
      pv_report_render_svg(report, ms, svg_path.c_str()) != PV_OK)
    rc = fail("writing svg");

  pv_report_free(report);
  pv_matchset_free(ms);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-view point-correspondence verification via pentagon "
               "cross-ratios and per-plane homographies"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Classify matches in a file");
  std::string matches_path, report_path, svg_path;
  pv_config cfg;
  pv_config_default(&cfg);
  bool second_off = false;
  verify->add_option("matches", matches_path, "match file")->required();
  verify->add_option("--grid", cfg.grid_n, "blocks per image-1 side");
  verify->add_option("--tau", cfg.cr_tau, "cross-ratio gate fraction");
  verify->add_option("--trials", cfg.trial_count, "sampling trials per block");
  verify->add_option("--per-block", cfg.per_block_pentagons,
                     "pentagons sought per block");
  verify->add_option("--merge-m", cfg.merge_m,
                     "vertices from the first pentagon per mix");
  verify->add_option("--mixes", cfg.merge_mixes,
                     "random splits before declaring non-merge");
  verify->add_flag("--no-second-pentagon", second_off,
                   "skip the complementary mixed pentagon");
  verify->add_option("--pixel-thresh", cfg.pixel_threshold,
                     "reprojection gate in pixels");
  auto* seed_opt = verify->add_option("--seed", cfg.seed, "RNG seed");
  verify->add_option("--out", report_path, "report output file");
  verify->add_option("--svg", svg_path, "SVG visualization output file");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a labeled match set "
                                            "from a scene spec");
  std::string scene_path, synth_out, labels_out;
  std::uint64_t synth_seed = 0;
  synth->add_option("scene", scene_path, "scene spec file")->required();
  synth->add_option("--out", synth_out, "match file to write")->required();
  synth->add_option("--labels", labels_out, "label file to write");
  auto* synth_seed_opt = synth->add_option("--seed", synth_seed,
                                           "override the spec's seed");

  // bench
  auto* bench = app.add_subcommand("bench", "Cross-ratio vs homography cost "
                                            "comparison");
  std::uint64_t iters = 100000;
  bench->add_option("--iters", iters, "evaluations per kernel");

  // score
  auto* score = app.add_subcommand("score", "Precision/recall of a report "
                                            "against oracle labels");
  std::string score_report, score_labels;
  score->add_option("--report", score_report, "report file")->required();
  score->add_option("--labels", score_labels, "label file")->required();

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) {
    cfg.second_mixed_pentagon = second_off ? 0 : 1;
    return run_verify(matches_path, cfg, seed_opt->count() > 0, report_path,
                      svg_path);
  }

  if (synth->parsed()) {
    const bool has_seed = synth_seed_opt->count() > 0;
    if (has_seed) std::printf("seed %" PRIu64 "\n", synth_seed);
    if (pv_synth_run(scene_path.c_str(), synth_out.c_str(),
                     labels_out.empty() ? nullptr : labels_out.c_str(),
                     has_seed ? 1 : 0, synth_seed) != PV_OK)
      return fail("synth");
    return kExitOk;
  }

  if (bench->parsed()) {
    pv_bench_result r;
    if (pv_bench(iters, &r) != PV_OK) return fail("bench");
    std::printf("pentaverify-bench v1\niterations %" PRIu64
                "\ncross_ratio_ns %.3f\nhomography4_ns %.3f\nratio %.3f\n",
                r.iterations, r.cross_ratio_ns, r.homography4_ns, r.ratio);
    return kExitOk;
  }

  if (score->parsed()) {
    pv_report* report = nullptr;
    if (pv_report_load(score_report.c_str(), &report) != PV_OK)
      return fail("loading report");
    pv_labels* labels = nullptr;
    if (pv_labels_load(score_labels.c_str(), &labels) != PV_OK) {
      pv_report_free(report);
      return fail("loading labels");
    }
    pv_score_result r;
    const pv_status st = pv_score(report, labels, &r);
    pv_report_free(report);
    pv_labels_free(labels);
    if (st != PV_OK) return fail("score");
    std::printf("tp %" PRIu64 " fp %" PRIu64 " tn %" PRIu64 " fn %" PRIu64
                "\nprecision %.6f\nrecall %.6f\n",
                r.true_positive, r.false_positive, r.true_negative,
                r.false_negative, r.precision, r.recall);
    return kExitOk;
  }

  return kExitInvalid;
}
