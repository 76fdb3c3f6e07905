/*
 * hegrad: encrypted distributed projected-gradient simulation.
 *
 * C interface over the core library. All objects are opaque handles created
 * and destroyed here; every call returns a status code and reports detail
 * through heg_last_error(). Strings returned through out-parameters are
 * heap-allocated and must be released with heg_string_free().
 */
#ifndef HEGRAD_H
#define HEGRAD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum heg_status {
  HEG_OK = 0,
  HEG_ERR_INVALID_ARGUMENT = 1,
  HEG_ERR_PARSE = 2,
  HEG_ERR_NOT_AFFINE = 3,
  HEG_ERR_KEY_BOUND = 4,
  HEG_ERR_PRECISION = 5,
  HEG_ERR_AUDIT = 6,
  HEG_ERR_MISMATCH = 7,
  HEG_ERR_INTERNAL = 8
} heg_status;

typedef struct heg_problem heg_problem;
typedef struct heg_run heg_run;

const char* heg_version(void);
const char* heg_status_name(heg_status status);
/* Thread-local detail for the most recent failing call in this thread. */
const char* heg_last_error(void);
void heg_string_free(char* text);

/* -- problems ----------------------------------------------------------- */

heg_status heg_problem_parse(const char* json_text, heg_problem** out);
heg_status heg_problem_to_json(const heg_problem* problem, char** out_json);
void heg_problem_free(heg_problem* problem);

/* Case-study builders; config schemas documented in the README. */
heg_status heg_problem_build_demand_response(const char* config_json, heg_problem** out);
heg_status heg_problem_build_opf(const char* config_json, heg_problem** out);

/* -- keys --------------------------------------------------------------- */

/* Deterministic key material from (bits, seed), serialized as JSON. */
heg_status heg_keygen_singlemod(uint32_t bits, uint64_t seed, char** out_json);
heg_status heg_keygen_paillier(uint32_t bits, uint64_t seed, char** out_json);

/* -- protocol runs ------------------------------------------------------- */

/*
 * scheme: "plain", "alg1" (shared odd modulus) or "alg2" (per-agent
 * Paillier keys). key_json may be NULL, in which case keys are generated
 * from (key_bits, seed). For "alg1" an explicit key file is the output of
 * heg_keygen_singlemod; for "alg2" a JSON array of keypairs as produced by
 * heg_keygen_paillier.
 */
heg_status heg_run_execute(const heg_problem* problem, const char* scheme,
                           uint32_t key_bits, const char* key_json, uint32_t iterations,
                           uint64_t seed, heg_run** out);
void heg_run_free(heg_run* run);

heg_status heg_run_trajectory_csv(const heg_run* run, char** out_csv);
heg_status heg_run_transcript_jsonl(const heg_run* run, char** out_jsonl);
heg_status heg_run_timing_text(const heg_run* run, char** out_text);

/* Exact per-step squared deviation; *out_identical is 1 when all zeros. */
heg_status heg_run_compare(const heg_run* a, const heg_run* b, char** out_csv,
                           int* out_identical);

/* View-discipline audit; returns HEG_ERR_AUDIT (report still written). */
heg_status heg_run_audit(const heg_run* run, const heg_problem* problem,
                         char** out_report);

/* -- replays of the embedded reference walkthroughs ------------------------------- */

/* which: "alg1" or "alg2". Returns HEG_ERR_MISMATCH when any intermediate
 * value differs from the reference value; the trace is always written. */
heg_status heg_golden(const char* which, char** out_trace);

/* -- benchmarks ---------------------------------------------------------- */

heg_status heg_bench(const heg_problem* problem, const char* scheme,
                     const uint32_t* key_bits, size_t bits_count, uint32_t iterations,
                     uint64_t seed, char** out_table);

/* -- inference analysis --------------------------------------------------- */

/* Quadratic-family analysis: stacked-matrix witness search, shadow-instance
 * scaling ladder, and the affine reconstruction attack when applicable. */
heg_status heg_ioi_analyze(const char* family_json, uint32_t adversary,
                           uint32_t iterations, char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* HEGRAD_H */
