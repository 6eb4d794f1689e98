/* C API of the bosonic Gaussian channel library.
 *
 * All functions return a bgc_status; results come back through out
 * parameters. Handles are opaque and must be released with the matching
 * _free function. Strings returned by the library are heap-allocated
 * and must be released with bgc_string_free. bgc_last_error() describes
 * the most recent failure on the calling thread.
 *
 * Matrices and compound results travel as JSON (see README for the
 * schemas); scalars travel as doubles. Entropic values are in nats.
 */
#ifndef BGC_H
#define BGC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bgc_status {
  BGC_OK = 0,
  BGC_ERR_BAD_ARGUMENT = 1,
  BGC_ERR_PARSE = 2,
  BGC_ERR_NON_HERMITIAN = 3,
  BGC_ERR_NOT_PSD = 4,
  BGC_ERR_DIMENSION = 5,
  BGC_ERR_DOMAIN = 6,
  BGC_ERR_INVALID_STATE = 7,
  BGC_ERR_INVALID_CHANNEL = 8,
  BGC_ERR_BAD_ORDER = 9,
  BGC_ERR_GAIN = 10,
  BGC_ERR_MODE_MISMATCH = 11,
  BGC_ERR_MIXED_VARIANT = 12,
  BGC_ERR_NOT_EXTREME = 13,
  BGC_ERR_UNSUPPORTED_BRANCH = 14,
  BGC_ERR_NON_COMMUTING = 15,
  BGC_ERR_CUTOFF = 16,
  BGC_ERR_INVALID_FACTOR = 17,
  BGC_ERR_NOT_CONVERGED = 18,
  BGC_ERR_INTERNAL = 19
} bgc_status;

typedef struct bgc_channel bgc_channel;
typedef struct bgc_state bgc_state;

const char* bgc_status_name(bgc_status status);

/* Message for the last error on this thread; empty string if none. */
const char* bgc_last_error(void);

void bgc_string_free(char* str);
void bgc_channel_free(bgc_channel* channel);
void bgc_state_free(bgc_state* state);

/* ---- construction and serialization ---- */

bgc_status bgc_channel_from_json(const char* json, bgc_channel** out);
bgc_status bgc_channel_to_json(const bgc_channel* channel, char** json_out);
bgc_status bgc_state_from_json(const char* json, bgc_state** out);
bgc_status bgc_state_to_json(const bgc_state* state, char** json_out);

bgc_status bgc_state_vacuum(int modes, bgc_state** out);

/* ---- channel predicates and scalar functionals ---- */

bgc_status bgc_channel_validate(const bgc_channel* channel, double tol,
                                int* valid_out, int* extreme_out);
bgc_status bgc_channel_is_injective(const bgc_channel* channel, double tol,
                                    int* out);
bgc_status bgc_channel_min_output_entropy(const bgc_channel* channel,
                                          double* nats_out);
bgc_status bgc_channel_one_to_p_norm(const bgc_channel* channel, double p,
                                     double* out);
bgc_status bgc_channel_min_renyi_entropy(const bgc_channel* channel, double p,
                                         double* nats_out);

/* ---- channel algebra ---- */

bgc_status bgc_channel_compose(const bgc_channel* outer,
                               const bgc_channel* inner, bgc_channel** out);
bgc_status bgc_channel_tensor(const bgc_channel* a, const bgc_channel* b,
                              bgc_channel** out);
bgc_status bgc_channel_apply(const bgc_channel* channel, const bgc_state* in,
                             bgc_state** out);

/* ---- structural results (compound JSON) ---- */

bgc_status bgc_channel_decompose(const bgc_channel* channel,
                                 bgc_channel** attenuator_out,
                                 bgc_channel** second_stage_out);
bgc_status bgc_channel_complement(const bgc_channel* channel,
                                  bgc_channel** out);
bgc_status bgc_channel_diagonalize(const bgc_channel* channel,
                                   char** json_out);
bgc_status bgc_channel_dilation_symbol(const bgc_channel* channel,
                                       char** json_out);

/* constraint_json: {"epsilon": [[complex]], "E": number} */
bgc_status bgc_channel_capacity(const bgc_channel* channel,
                                const char* constraint_json, char** json_out);

/* ---- state functionals ---- */

bgc_status bgc_state_is_valid(const bgc_state* state, double tol, int* out);
bgc_status bgc_state_von_neumann_entropy(const bgc_state* state,
                                         double* nats_out);
bgc_status bgc_state_renyi_entropy(const bgc_state* state, double p,
                                   double* nats_out);
/* spectrum_out must hold top_k doubles. */
bgc_status bgc_state_spectrum(const bgc_state* state, int top_k,
                              double* spectrum_out);

/* ---- Fock-space oracle ---- */

/* factor_json: {"k": number, "mu": number, "variant": "covariant"|...}
 * f_name: "neg_x_log_x" | "neg_x_sq" | "neg_x_p15". */
bgc_status bgc_witness_optimizer(const char* factor_json, const char* f_name,
                                 int trials, uint64_t seed, int cutoff,
                                 char** report_json_out);

/* Wehrl-type functional of a one-mode Gaussian state rendered in Fock
 * space at the given cutoff. */
bgc_status bgc_wehrl(const char* state_json, const char* f_name, int cutoff,
                     int radial_nodes, int angular_nodes, double* out);

#ifdef __cplusplus
}
#endif

#endif /* BGC_H */
