/* SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the pilot-reuse planning engine. All composite inputs
 * and outputs cross the boundary as JSON strings; rate tables travel as
 * an opaque handle so the Monte-Carlo estimate is paid once and reused.
 *
 * Every function returns a pp_status; on failure pp_last_error() holds a
 * thread-local message. Strings returned through out-parameters are
 * heap-allocated and must be released with pp_string_free().
 */
#ifndef PILOTPLAN_H
#define PILOTPLAN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
    PP_OK = 0,
    PP_ERR_INVALID_ARGUMENT = 1, /* bad parameter or malformed config */
    PP_ERR_DOMAIN = 2,           /* valid input outside a closed form's domain */
    PP_ERR_PARSE = 3,            /* unreadable JSON payload */
    PP_ERR_MISMATCH = 4,         /* reproduction or verification check failed */
    PP_ERR_INTERNAL = 5
} pp_status;

/* Opaque per-depth rate table (means, standard errors, provenance). */
typedef struct pp_rates pp_rates;

/* Message for the most recent failure on this thread; never NULL. */
const char* pp_last_error(void);

void pp_string_free(char* text);
void pp_rates_free(pp_rates* rates);

/* Monte-Carlo rate table for a 3^order-cell grid. workers = 0 picks the
 * hardware concurrency; the result is identical for any worker count. */
pp_status pp_rates_estimate(int order, double cell_radius, double hole_ratio,
                            double gamma, int64_t trials, uint64_t seed,
                            int workers, pp_rates** out);

/* Linear model C_i = c0 + slope * i (exact algebraic mode). */
pp_status pp_rates_linear(double c0, double slope, int depth_count,
                          pp_rates** out);

/* Cache-file serialization. The JSON round-trips bit-exactly and embeds
 * every generation parameter; loaders must compare them before reuse. */
pp_status pp_rates_to_json(const pp_rates* rates, char** json_out);
pp_status pp_rates_from_json(const char* json, pp_rates** out);

/* Scenario configs are JSON documents with rationals as "num/den":
 *   two groups:  {"L":81,"K":10,"alpha":"1/5","omega":"7/10"}
 *   n groups:    {"L":27,"K":10,
 *                 "groups":[{"alpha":"1/5","omega":"1/2"}, ...],
 *                 "linear_increments":false}
 */

/* Net-WSR-optimal assignment for one normalized coherence time. The
 * result JSON carries the pilot vectors, split, WSR, net-WSR and a
 * feasible flag (false when n_coh leaves no data time). */
pp_status pp_optimize(const char* config_json, const pp_rates* rates,
                      double n_coh, char** json_out);

/* Sweep n_coh over [lo, hi] in steps; as_csv selects the versioned CSV
 * schema, otherwise a JSON array of rows. */
pp_status pp_sweep(const char* config_json, const pp_rates* rates, double lo,
                   double hi, double step, int as_csv, char** out);

/* Reproduce a published result: target is one of "table3", "table4",
 * "fig3", "fig4", "fig5". rates may be NULL for "table4" (it is defined
 * in exact linear mode). *passed is 0 when any embedded check fails
 * (the report JSON then lists the offending lines) and the call returns
 * PP_ERR_MISMATCH with the report still populated. */
pp_status pp_reproduce(const char* target, const pp_rates* rates,
                       char** report_json_out, int* passed);

/* Brute-force certification of the closed forms on small instances.
 * seed drives only the Monte-Carlo half. Same contract as pp_reproduce
 * for *passed / PP_ERR_MISMATCH. */
pp_status pp_verify(int full_small_grid, uint64_t seed,
                    char** report_json_out, int* passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PILOTPLAN_H */
