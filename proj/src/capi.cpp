#include "pentaverify.h"

#include <string>
#include <vector>

#include "core/bench.hpp"
#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/pipeline.hpp"
#include "core/synth.hpp"

struct pv_matchset {
  pv::MatchSet ms;
};

struct pv_report {
  pv::VerificationReport report;
};

struct pv_labels {
  std::vector<int> labels;
};

namespace {

thread_local std::string g_last_error;

pv_status fail(pv_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

template <typename F>
pv_status guarded(F&& body) {
  try {
    return body();
  } catch (const pv::ParseError& e) {
    return fail(PV_ERROR_PARSE, e.what());
  } catch (const pv::BoundsError& e) {
    return fail(PV_ERROR_PARSE, e.what());
  } catch (const pv::InvalidInput& e) {
    return fail(PV_ERROR_INVALID_INPUT, e.what());
  } catch (const pv::InfeasibleSpec& e) {
    return fail(PV_ERROR_INVALID_INPUT, e.what());
  } catch (const std::exception& e) {
    return fail(PV_ERROR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* pv_last_error(void) { return g_last_error.c_str(); }

void pv_config_default(pv_config* cfg) {
  const pv::Config d;
  cfg->grid_n = d.grid_n;
  cfg->cr_tau = d.cr_tau;
  cfg->trial_count = d.trial_count;
  cfg->per_block_pentagons = d.per_block_pentagons;
  cfg->merge_m = d.merge_m;
  cfg->merge_mixes = d.merge_mixes;
  cfg->second_mixed_pentagon = d.second_mixed_pentagon ? 1 : 0;
  cfg->pixel_threshold = d.pixel_threshold;
  cfg->seed = d.seed;
}

pv_status pv_matchset_load(const char* path, pv_matchset** out) {
  return guarded([&] {
    auto ms = pv::parse_matches(pv::read_file(path));
    *out = new pv_matchset{std::move(ms)};
    return PV_OK;
  });
}

pv_status pv_matchset_parse(const char* text, pv_matchset** out) {
  return guarded([&] {
    auto ms = pv::parse_matches(text);
    *out = new pv_matchset{std::move(ms)};
    return PV_OK;
  });
}

pv_status pv_matchset_save(const pv_matchset* ms, const char* path) {
  return guarded([&] {
    pv::write_file(path, pv::serialize_matches(ms->ms));
    return PV_OK;
  });
}

size_t pv_matchset_size(const pv_matchset* ms) { return ms->ms.matches.size(); }

void pv_matchset_free(pv_matchset* ms) { delete ms; }

pv_status pv_verify(const pv_matchset* ms, const pv_config* cfg,
                    pv_report** out) {
  return guarded([&] {
    pv::Config c;
    c.grid_n = cfg->grid_n;
    c.cr_tau = cfg->cr_tau;
    c.trial_count = cfg->trial_count;
    c.per_block_pentagons = cfg->per_block_pentagons;
    c.merge_m = cfg->merge_m;
    c.merge_mixes = cfg->merge_mixes;
    c.second_mixed_pentagon = cfg->second_mixed_pentagon != 0;
    c.pixel_threshold = cfg->pixel_threshold;
    c.seed = cfg->seed;
    *out = new pv_report{pv::run(ms->ms, c)};
    return PV_OK;
  });
}

void pv_report_free(pv_report* report) { delete report; }

pv_status pv_report_save(const pv_report* report, const char* path) {
  return guarded([&] {
    pv::write_file(path, pv::serialize_report(report->report));
    return PV_OK;
  });
}

pv_status pv_report_load(const char* path, pv_report** out) {
  return guarded([&] {
    auto r = pv::parse_report(pv::read_file(path));
    *out = new pv_report{std::move(r)};
    return PV_OK;
  });
}

pv_status pv_report_render_svg(const pv_report* report, const pv_matchset* ms,
                               const char* path) {
  return guarded([&] {
    pv::write_file(path, pv::render_report_svg(ms->ms, report->report));
    return PV_OK;
  });
}

int pv_report_no_plane_found(const pv_report* report) {
  return report->report.no_plane_found ? 1 : 0;
}

uint64_t pv_report_match_count(const pv_report* report) {
  return report->report.verdicts.size();
}

uint64_t pv_report_correct_count(const pv_report* report) {
  return report->report.correct_count;
}

uint64_t pv_report_incorrect_count(const pv_report* report) {
  return report->report.incorrect_count;
}

uint64_t pv_report_group_count(const pv_report* report) {
  return report->report.groups.size();
}

uint64_t pv_report_eq3_evaluations(const pv_report* report) {
  return report->report.eq3_evaluations;
}

double pv_report_wall_time_ms(const pv_report* report) {
  return report->report.wall_time_ms;
}

pv_status pv_synth_run(const char* scene_path, const char* matches_path,
                       const char* labels_path, int has_seed_override,
                       uint64_t seed_override) {
  return guarded([&] {
    auto spec = pv::parse_scene(pv::read_file(scene_path));
    if (has_seed_override) spec.seed = seed_override;
    auto labeled = pv::generate(spec);
    pv::write_file(matches_path, pv::serialize_matches(labeled.match_set));
    if (labels_path)
      pv::write_file(labels_path, pv::serialize_labels(labeled.labels));
    return PV_OK;
  });
}

pv_status pv_labels_load(const char* path, pv_labels** out) {
  return guarded([&] {
    auto labels = pv::parse_labels(pv::read_file(path));
    *out = new pv_labels{std::move(labels)};
    return PV_OK;
  });
}

size_t pv_labels_size(const pv_labels* labels) { return labels->labels.size(); }

void pv_labels_free(pv_labels* labels) { delete labels; }

pv_status pv_score(const pv_report* report, const pv_labels* labels,
                   pv_score_result* out) {
  return guarded([&] {
    const auto& verdicts = report->report.verdicts;
    if (verdicts.size() != labels->labels.size())
      return fail(PV_ERROR_INVALID_INPUT,
                  "report and label file lengths differ");
    pv_score_result r{};
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
      const bool predicted = verdicts[i].correct;
      const bool actual = labels->labels[i] != pv::kOutlierLabel;
      if (predicted && actual)
        ++r.true_positive;
      else if (predicted && !actual)
        ++r.false_positive;
      else if (!predicted && !actual)
        ++r.true_negative;
      else
        ++r.false_negative;
    }
    const double tp = static_cast<double>(r.true_positive);
    r.precision = (r.true_positive + r.false_positive) > 0
                      ? tp / static_cast<double>(r.true_positive +
                                                 r.false_positive)
                      : 0.0;
    r.recall = (r.true_positive + r.false_negative) > 0
                   ? tp / static_cast<double>(r.true_positive +
                                              r.false_negative)
                   : 0.0;
    *out = r;
    return PV_OK;
  });
}

pv_status pv_bench(uint64_t iterations, pv_bench_result* out) {
  return guarded([&] {
    if (iterations < 1) return fail(PV_ERROR_INVALID_INPUT,
                                    "iterations must be >= 1");
    const auto r = pv::benchmark_costs(iterations);
    out->iterations = r.iterations;
    out->cross_ratio_ns = r.cross_ratio_ns;
    out->homography4_ns = r.homography4_ns;
    out->ratio = r.ratio;
    return PV_OK;
  });
}

}  // extern "C"
