#ifndef VERITAS_VERITAS_H
#define VERITAS_VERITAS_H
/*
 * C interface of the veritas engine.
 *
 * Every function returns a veritas_status. On failure the thread's last error holds
 * a message and a JSON detail document; outputs are left untouched. Strings returned
 * through char** belong to the caller and are released with veritas_string_free.
 * Handles are opaque and released with their *_free function (NULL is accepted).
 *
 * Probabilities given as strings ("5/6", "0.25") are read exactly, which enables the
 * rational results some functions report next to the floating-point ones.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(VERITAS_BUILDING_LIBRARY)
#define VERITAS_API __attribute__((visibility("default")))
#else
#define VERITAS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum veritas_status {
    VERITAS_OK = 0,
    VERITAS_E_DOMAIN = 1,     /* argument outside the mathematical domain */
    VERITAS_E_UNDEFINED = 2,  /* 0/0 Bayes factor: seek other hypotheses */
    VERITAS_E_VALIDATION = 3, /* malformed network, findings or request */
    VERITAS_E_IMPOSSIBLE = 4, /* findings have probability zero */
    VERITAS_E_NUMERIC = 5,    /* quadrature failure, enumeration budget, ... */
    VERITAS_E_NOT_FOUND = 6,
    VERITAS_E_IO = 7,
    VERITAS_E_ARGUMENT = 8,   /* NULL pointer or malformed JSON argument */
    VERITAS_E_INTERNAL = 9
} veritas_status;

typedef struct veritas_network veritas_network;
typedef struct veritas_service veritas_service;

typedef struct veritas_gaussian_pair {
    double mu1;
    double sigma1;
    double mu2;
    double sigma2;
} veritas_gaussian_pair;

VERITAS_API const char* veritas_version(void);
VERITAS_API const char* veritas_status_name(veritas_status status);

/* Message and {"error":{"code","message","details"?}} of the calling thread's last failure. */
VERITAS_API const char* veritas_last_error(void);
VERITAS_API const char* veritas_last_error_json(void);

VERITAS_API void veritas_string_free(char* s);

/* ---- display ---- */
VERITAS_API veritas_status veritas_format_significant(double value, int digits, char** out);
VERITAS_API veritas_status veritas_format_fixed(double value, int decimals, char** out);

/* ---- beliefs, odds, Bayes factors ---- */
VERITAS_API veritas_status veritas_odds_from_prob(double p, double* out);
VERITAS_API veritas_status veritas_prob_from_odds(double odds, double* out);
VERITAS_API veritas_status veritas_jl_from_odds(double odds, double* out);
VERITAS_API veritas_status veritas_odds_from_jl(double jl, double* out);
VERITAS_API veritas_status veritas_update_odds(double prior_odds, double bf, double* out);
VERITAS_API veritas_status veritas_posterior_prob(double prior_odds, double bf, double* out);
VERITAS_API veritas_status veritas_accumulate_jl(double prior_jl, const double* deltas, size_t n, double* out);

/* {"prior":{odds,probability,jl},"bayes_factor","weight","posterior":{...},"falsified"} */
VERITAS_API veritas_status veritas_update_report(double prior_odds, double bf, char** out);

/* 41 rows for JL -2.0 ... +2.0. */
VERITAS_API veritas_status veritas_jl_table(char** out);

/* Product of Bayes factors: {"bayes_factor","weight"}. */
VERITAS_API veritas_status veritas_combine_bayes_factors(const double* bfs, size_t n, char** out);

/*
 * Sum of uncertain leanings. Request: {"terms":[{"mean":m,"sd":s} | {"lo":a,"hi":b}
 * (uniform) | {"value":v} (exact), ...], "repeat": k (optional, default 1)}.
 * Result: {"mean","sd","half_width_95","terms"}.
 */
VERITAS_API veritas_status veritas_combine_uncertain(const char* request_json, char** out);

/* Request: {"weights":[{"first":o,"weights":[...]}, ...]} convolved left to right. */
VERITAS_API veritas_status veritas_convolve(const char* request_json, char** out);

VERITAS_API veritas_status veritas_expected_frequency(double p, double n, double* expected, double* sd);

/* Posterior leanings for `steps` prior leanings evenly spaced over [lo, hi]. */
VERITAS_API veritas_status veritas_sensitivity_sweep(double prior_jl_lo, double prior_jl_hi, size_t steps,
                                                     double bf, char** out);

/* ---- testimony ---- */

/*
 * Request: {"p_report_given_true","p_report_given_false","p_e_given_h","p_e_given_hbar"},
 * each a number or an exact string such as "5/6"; {"p_truth"} may replace the two report
 * probabilities for a witness who otherwise reports the opposite state. Result holds the effective and ideal
 * factors, the weight, lambda, J_lambda and, when all inputs are exact, "exact":"65/17".
 */
VERITAS_API veritas_status veritas_testimony_bf(const char* request_json, char** out);
VERITAS_API veritas_status veritas_testimony_weight(double delta_jl_e, double j_lambda, double jl_e_given_h,
                                                    double* out);
VERITAS_API veritas_status veritas_testimony_table(double delta_jl_e, char** out);

/* ---- networks ---- */
VERITAS_API veritas_status veritas_network_from_json(const char* json, veritas_network** out);
VERITAS_API veritas_status veritas_network_load(const char* path, veritas_network** out);
/* Builtin network by name; see veritas_builtin_list. */
VERITAS_API veritas_status veritas_network_builtin(const char* name, veritas_network** out);
VERITAS_API veritas_status veritas_network_box(size_t n_extractions, const char* p_truth, unsigned white_in_b2,
                                               unsigned balls, veritas_network** out);
VERITAS_API void veritas_network_free(veritas_network* net);
VERITAS_API veritas_status veritas_network_to_json(const veritas_network* net, char** out);
/* {"nodes":n,"topological_order":[...],"joint_states":N,"target":{...}|null} */
VERITAS_API veritas_status veritas_network_describe(const veritas_network* net, char** out);
VERITAS_API veritas_status veritas_builtin_list(char** out);

/*
 * Findings are {"findings":{"node":"state",...}} (applied in key order) or an array of
 * "Node=State" strings. method: "ve" (variable elimination), "enumerate" or "exact"
 * (rational enumeration, probabilities as "n/d" strings next to doubles).
 * target: "Node:num:den" to add the leaning ledger, or NULL (the builtin target is
 * used when the network has one and target is NULL).
 */
VERITAS_API veritas_status veritas_infer(const veritas_network* net, const char* findings_json, const char* method,
                                         const char* target, char** out);
/* P(target | findings) with target "Node=State". */
VERITAS_API veritas_status veritas_query(const veritas_network* net, const char* target, const char* findings_json,
                                         double* out);

/* ---- scenarios and simulations ---- */
VERITAS_API veritas_status veritas_scenario(const char* name, char** out);

VERITAS_API veritas_gaussian_pair veritas_gaussian_pair_default(void);
VERITAS_API veritas_status veritas_gaussian_delta_jl(veritas_gaussian_pair g, double x, double* out);
/* Integer table, crossing points and extremum. */
VERITAS_API veritas_status veritas_evidence_table(veritas_gaussian_pair g, int lo, int hi, char** out);
/* Quadrature moments per draw and for n draws. */
VERITAS_API veritas_status veritas_walk_statistics(veritas_gaussian_pair g, size_t n_draws, char** out);
/*
 * truth: "H1" or "H2". threads = 0 uses all cores; output does not depend on it.
 * json_out receives summary, bands and (if include_trajectories) the trajectories;
 * csv_out, when non-NULL, receives traj_id,step,jl rows.
 */
VERITAS_API veritas_status veritas_simulate_walks(veritas_gaussian_pair g, const char* truth, size_t n_draws,
                                                  size_t n_traj, uint64_t seed, unsigned threads,
                                                  int include_trajectories, char** json_out, char** csv_out);
/* csv_out, when non-NULL, receives bin_lo,bin_hi,mass rows. */
VERITAS_API veritas_status veritas_propagate(size_t n_samples, uint64_t seed, double interval_width, unsigned threads,
                                             int include_histogram, char** json_out, char** csv_out);

/* ---- service ---- */

/* options: {"cors_origin","snapshot_path","max_walk_values","max_propagation_samples"} or NULL. */
VERITAS_API veritas_status veritas_service_create(const char* options_json, veritas_service** out);
/* Serves on a background thread; *bound_port receives the port (useful with port 0). */
VERITAS_API veritas_status veritas_service_start(veritas_service* svc, const char* host, int port, int* bound_port);
/* Stops serving and writes the snapshot when configured. */
VERITAS_API veritas_status veritas_service_stop(veritas_service* svc);
/* Dispatches one request without a socket. */
VERITAS_API veritas_status veritas_service_handle(veritas_service* svc, const char* method, const char* path,
                                                  const char* body, int* http_status, char** response);
VERITAS_API void veritas_service_free(veritas_service* svc);

#ifdef __cplusplus
}
#endif

#endif
