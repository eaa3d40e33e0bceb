/* phasestar: phase-space engine for normally ordered operator symbols.
 *
 * C surface over the engine: opaque handles, status codes, UTF-8 JSON/CSV
 * documents.  Every function returns a ps_status; outputs are written
 * through the trailing pointer arguments and are only valid on PS_OK
 * (runners may also emit a document alongside PS_ERR_TOLERANCE, see below).
 * Strings handed out by the library are released with ps_string_free.
 * Handles are not thread-safe for concurrent mutation; distinct handles may
 * be used from distinct threads freely.
 */
#ifndef PHASESTAR_H
#define PHASESTAR_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
  PS_OK = 0,
  PS_ERR_INVALID_ARGUMENT = 1,
  PS_ERR_PARSE = 2,
  PS_ERR_DIMENSION_TOO_SMALL = 3,
  PS_ERR_TRUNCATION_TOO_COARSE = 4,
  PS_ERR_NON_CONVERGENCE = 5,
  PS_ERR_DIVERGENT_TRANSFORM = 6,
  PS_ERR_INADMISSIBLE_TEST_FUNCTION = 7,
  PS_ERR_INTERNAL = 8
} ps_status;

/* Sparse polynomial in (alpha*, alpha); the symbol of a normally ordered
 * operator.  Interchange format: JSON list of [m, n, re, im] records,
 * order-insensitive, duplicates summed on load. */
typedef struct ps_symbol ps_symbol;

/* Message for the last failure on this thread; valid until the next call. */
const char* ps_last_error(void);

void ps_string_free(char* s);
void ps_symbol_free(ps_symbol* s);

/* --- symbols ---------------------------------------------------------- */

ps_status ps_symbol_create(ps_symbol** out);
ps_status ps_symbol_parse(const char* json, ps_symbol** out);
ps_status ps_symbol_to_json(const ps_symbol* s, char** json_out);

/* Adds coef on conj(alpha)^m alpha^n; repeated calls accumulate. */
ps_status ps_symbol_add_term(ps_symbol* s, unsigned m, unsigned n,
                             double re, double im);

ps_status ps_symbol_add(const ps_symbol* a, const ps_symbol* b,
                        ps_symbol** out);
ps_status ps_symbol_star(const ps_symbol* a, const ps_symbol* b,
                         ps_symbol** out);
ps_status ps_symbol_star_commutator(const ps_symbol* a, const ps_symbol* b,
                                    ps_symbol** out);

/* sum b_mn a_star^m a^n with independent complex arguments. */
ps_status ps_symbol_evaluate(const ps_symbol* s, double a_re, double a_im,
                             double astar_re, double astar_im,
                             double* out_re, double* out_im);

/* Star exponential sum_k z^k/k! H^{*k} with adaptive truncation.  On
 * return *converged_out is 0 when the tolerance was not reached by
 * max_order (the partial result is still produced). */
ps_status ps_symbol_star_exp(const ps_symbol* h, double z_re, double z_im,
                             int max_order, double tol, ps_symbol** out,
                             int* order_out, double* tail_out,
                             int* converged_out);

/* Number-basis matrix of the symbol: {"dim": D, "entries": [[re,im],...]},
 * row-major. */
ps_status ps_symbol_fock_matrix_json(const ps_symbol* s, int dim,
                                     char** json_out);

/* Truncated coherent state in the same layout (dim plus [re,im] pairs).
 * Fails with PS_ERR_TRUNCATION_TOO_COARSE when dim cannot hold the label. */
ps_status ps_coherent_vector_json(double alpha_re, double alpha_im, int dim,
                                  char** json_out);

/* --- experiment runners ------------------------------------------------
 * Configs are JSON objects; unknown keys are ignored, all knobs have
 * defaults and the resolved config is echoed inside every report. */

ps_status ps_run_amplitude(const char* config_json, char** report_json_out);

ps_status ps_run_convergence(const char* config_json, char** csv_out,
                             char** sidecar_json_out);

ps_status ps_run_qdist(const char* config_json, char** csv_out,
                       char** sidecar_json_out);

/* Runs the numeric verification battery; the report lists one entry per
 * criterion.  *all_passed_out is 1 when every criterion passed. */
ps_status ps_run_selftest(char** report_json_out, char** summary_text_out,
                          int* all_passed_out);

#ifdef __cplusplus
}
#endif

#endif /* PHASESTAR_H */
