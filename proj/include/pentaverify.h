/* pentaverify - geometric verification of two-view point correspondences.
 *
 * C API over the C++ core: opaque handles, integer status codes, and a
 * thread-local error message retrievable with pv_last_error().
 */
#ifndef PENTAVERIFY_H
#define PENTAVERIFY_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pv_status {
  PV_OK = 0,
  PV_ERROR_INVALID_INPUT = 1,
  PV_ERROR_PARSE = 2,
  PV_ERROR_IO = 3,
  PV_ERROR_INTERNAL = 4
} pv_status;

/* Message describing the most recent failure on this thread. */
const char* pv_last_error(void);

typedef struct pv_matchset pv_matchset;
typedef struct pv_report pv_report;
typedef struct pv_labels pv_labels;

typedef struct pv_config {
  int grid_n;                 /* blocks per image-1 side (default 3) */
  double cr_tau;              /* cross-ratio gate fraction (default 0.05) */
  int trial_count;            /* random quintuple draws per block (1000) */
  int per_block_pentagons;    /* pentagons sought per block (1) */
  int merge_m;                /* vertices from the first pentagon per mix (3) */
  int merge_mixes;            /* random splits before non-merge (5) */
  int second_mixed_pentagon;  /* also check the complementary pentagon (1) */
  double pixel_threshold;     /* reprojection gate in pixels (10) */
  uint64_t seed;
} pv_config;

void pv_config_default(pv_config* cfg);

/* -- match sets ---------------------------------------------------------- */
pv_status pv_matchset_load(const char* path, pv_matchset** out);
pv_status pv_matchset_parse(const char* text, pv_matchset** out);
pv_status pv_matchset_save(const pv_matchset* ms, const char* path);
size_t pv_matchset_size(const pv_matchset* ms);
void pv_matchset_free(pv_matchset* ms);

/* -- verification -------------------------------------------------------- */
pv_status pv_verify(const pv_matchset* ms, const pv_config* cfg,
                    pv_report** out);
void pv_report_free(pv_report* report);
pv_status pv_report_save(const pv_report* report, const char* path);
pv_status pv_report_load(const char* path, pv_report** out);
pv_status pv_report_render_svg(const pv_report* report, const pv_matchset* ms,
                               const char* path);
int pv_report_no_plane_found(const pv_report* report);
uint64_t pv_report_match_count(const pv_report* report);
uint64_t pv_report_correct_count(const pv_report* report);
uint64_t pv_report_incorrect_count(const pv_report* report);
uint64_t pv_report_group_count(const pv_report* report);
uint64_t pv_report_eq3_evaluations(const pv_report* report);
double pv_report_wall_time_ms(const pv_report* report);

/* -- synthetic scenes ----------------------------------------------------- */
/* Reads a scene spec file and writes a match file plus a parallel label
 * file (labels_path may be NULL). A non-negative seed_override replaces the
 * spec's seed. */
pv_status pv_synth_run(const char* scene_path, const char* matches_path,
                       const char* labels_path, int has_seed_override,
                       uint64_t seed_override);

/* -- scoring -------------------------------------------------------------- */
pv_status pv_labels_load(const char* path, pv_labels** out);
size_t pv_labels_size(const pv_labels* labels);
void pv_labels_free(pv_labels* labels);

typedef struct pv_score_result {
  uint64_t true_positive;   /* oracle inlier marked correct */
  uint64_t false_positive;  /* oracle outlier marked correct */
  uint64_t true_negative;
  uint64_t false_negative;
  double precision;
  double recall;
} pv_score_result;

pv_status pv_score(const pv_report* report, const pv_labels* labels,
                   pv_score_result* out);

/* -- cost micro-benchmark -------------------------------------------------- */
typedef struct pv_bench_result {
  uint64_t iterations;
  double cross_ratio_ns;
  double homography4_ns;
  double ratio;
} pv_bench_result;

pv_status pv_bench(uint64_t iterations, pv_bench_result* out);

#ifdef __cplusplus
}
#endif

#endif /* PENTAVERIFY_H */
