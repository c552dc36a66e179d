/*
 * greenforge -- p-harmonic Green functions, condenser capacities and
 * uniqueness diagnostics on weighted planar domains, under the Euclidean
 * and the l1-Finsler gradient norms.
 *
 * C interface of the shared library.  All functions return a gf_status;
 * results come back through out-parameters.  Strings returned through
 * char** out-parameters are owned by the caller and must be released with
 * gf_string_free().  Handles are opaque and freed with their _destroy()
 * function.  On any failure gf_last_error() describes what went wrong
 * (thread-local).
 */

#ifndef GREENFORGE_H
#define GREENFORGE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gf_status {
  GF_OK = 0,
  GF_ERR_DOMAIN = 1,        /* argument outside the mathematical domain */
  GF_ERR_RANGE = 2,         /* argument outside the configured numeric range */
  GF_ERR_PARSE = 3,         /* malformed spec string or parameter JSON */
  GF_ERR_SOLVER = 4,        /* optimizer failed to make progress */
  GF_ERR_INCONCLUSIVE = 5,  /* numeric evidence refuses a verdict */
  GF_ERR_NORMALIZATION = 6, /* level probes of A disagree */
  GF_ERR_WITNESS = 7,       /* witness sub-check failed */
  GF_ERR_IO = 8,            /* file or wire-format problem */
  GF_ERR_INTERNAL = 9
} gf_status;

const char* gf_status_name(gf_status s);

/* thread-local message for the most recent failure in this thread */
const char* gf_last_error(void);

void gf_string_free(char* s);

/* ------------------------------------------------------------------ */
/* radial weights and their ball-measure profiles                      */

typedef struct gf_weight gf_weight;

/* spec grammar: "power:<alpha>" | "osc:<a>,<b>,<c>,<d>" */
gf_status gf_weight_create(const char* spec, gf_weight** out);
void gf_weight_destroy(gf_weight* w);

gf_status gf_weight_at(const gf_weight* w, double rho, double* out);
gf_status gf_mu_ball(const gf_weight* w, double r, double* out);

/* min/max pairwise slope of log mu(B_r) over [r_lo, r_hi] */
gf_status gf_exponent_window(const gf_weight* w, double r_lo, double r_hi,
                             double* q_lower_sup, double* q_upper_inf);

/* cumulative table as CSV with columns log2_r,log2_mu */
gf_status gf_profile_csv(const gf_weight* w, char** csv_out);

/* ------------------------------------------------------------------ */
/* uniqueness criterion                                                */

gf_status gf_wiener_tail(const gf_weight* w, double p, double r, double upper,
                         double* out);
gf_status gf_criterion_factor(const gf_weight* w, double p, double r,
                              double* out);

/* 0 = zero capacity, 1 = positive; inconclusive evidence is an error */
gf_status gf_singleton_capacity_sign(const gf_weight* w, double p, int* sign);

/* JSON: {weight, p, classification, rule, window, trace:[{r,F}]} */
gf_status gf_classify_uniqueness(const gf_weight* w, double p,
                                 char** json_out);

/* ------------------------------------------------------------------ */
/* capacities                                                          */

gf_status gf_ring_capacity(const gf_weight* w, double p, double r, double R,
                           double* value, double* error_estimate,
                           int* is_closed_form);
gf_status gf_radial_green_constant(double alpha, double p, double* out);
gf_status gf_a_exponent(double p, double alpha, double* out);

/* ------------------------------------------------------------------ */
/* variational solves and the Green family (JSON in / JSON out)        */

/* spec: {weight, p, norm:"euclid"|"finsler", grid:{M,N,r0,R}, bc:{...},
 *        schedule:[...], stop_tol?, max_iters?, threads?}
 * result: {energy, error_estimate, iterations, ...}; *field_csv_out (when
 * non-null) receives the solved field as "r,theta,value" CSV. */
gf_status gf_solve(const char* spec_json, char** result_json,
                   char** field_csv_out);

/* params: {p, alpha, profile:"zero"|"triangle", R?|unbounded?, normalize?,
 *          levels?, grid?, eval?:[[r,theta],...], trace?:{radii,R_cap}} */
gf_status gf_green(const char* params_json, char** json_out);

/* params: {p, alpha, R, f1, f2, levels?, grid?} */
gf_status gf_witness_nonuniqueness(const char* params_json, char** json_out);

/* params: {p, alpha, second_profile?, grid?} */
gf_status gf_witness_comparison(const char* params_json, char** json_out);

/* ------------------------------------------------------------------ */
/* Harnack constants and oscillation decay                             */

gf_status gf_harnack_constants(double A, double lambda, double* alpha_exp,
                               double* C0);

/* field arrives as "r,theta,value" CSV content */
gf_status gf_harnack_decay(const char* field_csv, double cx, double cy,
                           double radius, const double* deltas, int n_deltas,
                           double lambda, char** json_out);

/* ------------------------------------------------------------------ */
/* acceptance bundle                                                   */

/* only/n_only select a subset of criteria ids; pass NULL/0 for all */
gf_status gf_acceptance_report(const int* only, int n_only, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* GREENFORGE_H */
