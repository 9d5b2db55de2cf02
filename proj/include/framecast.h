/* C interface to the framecast analysis library.
 *
 * Every entry point takes UTF-8 JSON document text plus a JSON options
 * object ("{}" or NULL for defaults) and returns an owned fc_result handle.
 * Results carry a status from the shared code taxonomy, zero or more output
 * documents in canonical JSON (sorted keys, 17-significant-digit floats),
 * and a one-line message when the status is nonzero. Calls never throw and
 * never return NULL except on allocation failure.
 */
#ifndef FRAMECAST_H
#define FRAMECAST_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
    FC_OK = 0,
    FC_MALFORMED = 1,           /* unreadable input or bad parameter */
    FC_DIMENSION_MISMATCH = 2,  /* shapes disagree */
    FC_FRAME_SEQUENCE_ONLY = 3, /* analyze: system spans a proper subspace */
    FC_DEGENERATE_SYSTEM = 4,   /* empty or all-zero system */
    FC_SPECTRAL_RADIUS = 5,     /* infinite orbit not summable */
    FC_NOT_CYCLIC = 6,          /* generator not cyclic for the operator */
    FC_ADMISSIBILITY = 7,       /* perturbation parameters out of range */
    FC_DOMAIN = 8,              /* other precondition violated */
    FC_INTERNAL = 9
} fc_status;

typedef struct fc_result fc_result;

/* Library version string, static storage. */
const char* fc_version(void);

/* Stable lowercase name for a status value, "unknown" otherwise. */
const char* fc_status_name(int status);

/* Frame bounds, tightness and the restricted-spectrum test of one system
 * document. Status FC_FRAME_SEQUENCE_ONLY still carries the full report. */
fc_result* fc_analyze(const char* system_json, const char* options_json);

/* Orbit of an operator/generator pair. Options: steps (finite system
 * document) or infinite (frame-operator report). */
fc_result* fc_iterate(const char* operator_json, const char* vector_json,
                      const char* options_json);

/* Least-squares transition operator of a system plus consistency flags. */
fc_result* fc_recover(const char* system_json, const char* options_json);

/* Power-decay plus Stein-identity frame characterization of {T^k f}. */
fc_result* fc_represent_check(const char* operator_json, const char* vector_json,
                              const char* options_json);

/* Multiplication-operator representation of a Hermitian operator relative
 * to a cyclic generator. */
fc_result* fc_diagonalize(const char* operator_json, const char* vector_json,
                          const char* options_json);

/* Perturbation bound sandwich between two systems; options l1/l2 switch to
 * the sampled scalar-hypothesis check (trials, seed). */
fc_result* fc_perturb(const char* reference_json, const char* perturbed_json,
                      const char* options_json);

/* Invariant-block decomposition with per-block generator certification. */
fc_result* fc_conjecture(const char* operator_json, const char* options_json);

/* Example inputs: kind is "harmonic", "contraction" or "jordan"; options
 * dim, size, radius, lambda_re, lambda_im, seed. */
fc_result* fc_generate(const char* kind, const char* options_json);

/* Accessors. All tolerate NULL and out-of-range indices. Returned strings
 * are owned by the result and valid until fc_result_free. */
int fc_result_status(const fc_result* result);
const char* fc_result_message(const fc_result* result);
int fc_result_document_count(const fc_result* result);
const char* fc_result_document(const fc_result* result, int index);
void fc_result_free(fc_result* result);

#ifdef __cplusplus
}
#endif

#endif /* FRAMECAST_H */
