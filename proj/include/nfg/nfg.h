/*
 * nfg.h - C interface to the nfg Gaussian-correlation library.
 *
 * All matrices cross this boundary as row-major arrays of doubles. Functions
 * return an nfg_status; on failure nfg_last_error() holds a message for the
 * calling thread until its next failing call. Handles are immutable after
 * creation and may be shared between threads for reading.
 *
 * Conventions: quadratures ordered (x1, p1, x2, p2, ...), covariance matrices
 * vacuum-normalized (vacuum = identity), means in x = (a + a^dagger)/sqrt(2)
 * units. Subsystem A is the first n_a modes, B the remaining n_b.
 */
#ifndef NFG_NFG_H
#define NFG_NFG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NFG_BUILDING_LIBRARY)
#    define NFG_API __declspec(dllexport)
#  else
#    define NFG_API __declspec(dllimport)
#  endif
#else
#  define NFG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nfg_status {
  NFG_OK = 0,
  NFG_ERR_INVALID_ARGUMENT = 1,
  NFG_ERR_DIMENSION = 2,
  NFG_ERR_NON_FINITE = 3,
  NFG_ERR_UNPHYSICAL = 4,
  NFG_ERR_NOT_POSITIVE_DEFINITE = 5,
  NFG_ERR_INVALID_CHANNEL = 6,
  NFG_ERR_PARTITION = 7,
  NFG_ERR_NO_CONVERGENCE = 8,
  NFG_ERR_BUFFER_TOO_SMALL = 9,
  NFG_ERR_INTERNAL = 10
} nfg_status;

typedef enum nfg_method {
  NFG_METHOD_CLOSED_FORM = 0,
  NFG_METHOD_NUMERIC = 1,
  NFG_METHOD_CHANNEL_CLOSED_FORM = 2
} nfg_method;

typedef struct nfg_state nfg_state;
typedef struct nfg_channel nfg_channel;

typedef struct nfg_standard_form {
  double a, b, c, d;
} nfg_standard_form;

typedef struct nfg_validation {
  int physical;
  int symmetric;
  double symmetry_deviation;
  double min_symplectic_eigenvalue;
} nfg_validation;

typedef struct nfg_optimizer_config {
  int grid_points;
  int refine_iters;
  int restarts;
  uint64_t seed;
} nfg_optimizer_config;

typedef struct nfg_result {
  double value;
  nfg_method method;
  int lower_bound_only;
  int converged;
  /* Angles attaining the supremum; only the first min(n_theta, 8) are stored. */
  int n_theta;
  double theta[8];
} nfg_result;

typedef struct nfg_monotonicity {
  double before;
  double after;
  double slack;
  int holds;
} nfg_monotonicity;

typedef struct nfg_sweep_grid {
  double n_bar_min, n_bar_max;
  int n_bar_steps;
  double mu_min, mu_max;
  int mu_steps;
} nfg_sweep_grid;

typedef struct nfg_sweep_row {
  double n_bar, mu, nfg, dg, q, nfg_minus_dg, nfg_minus_q;
} nfg_sweep_row;

/* ---- diagnostics ------------------------------------------------------- */

NFG_API const char* nfg_status_string(nfg_status status);
NFG_API const char* nfg_last_error(void);
NFG_API const char* nfg_version(void);

/* ---- states ------------------------------------------------------------ */

/* cm has (2(n_a+n_b))^2 entries; mean may be NULL (zero mean). With
 * allow_unphysical != 0 only structural checks are applied. */
NFG_API nfg_status nfg_state_create(int n_a, int n_b, const double* cm, size_t cm_len, const double* mean,
                                    size_t mean_len, int allow_unphysical, nfg_state** out);
NFG_API nfg_status nfg_state_ssts(double n_bar, double mu, nfg_state** out);
NFG_API nfg_status nfg_state_tmsv(double r, nfg_state** out);
NFG_API nfg_status nfg_state_clone(const nfg_state* state, nfg_state** out);
NFG_API void nfg_state_destroy(nfg_state* state);

NFG_API nfg_status nfg_state_partition(const nfg_state* state, int* n_a, int* n_b);
/* Copies the CM (row-major) or mean; len must be at least the required size. */
NFG_API nfg_status nfg_state_cm(const nfg_state* state, double* out, size_t len);
NFG_API nfg_status nfg_state_mean(const nfg_state* state, double* out, size_t len);

/* ---- core -------------------------------------------------------------- */

/* symplectic_eigenvalues may be NULL; otherwise it receives dim/2 values,
 * descending. */
NFG_API nfg_status nfg_validate_cm(const double* cm, size_t dim, double tol, nfg_validation* report,
                                   double* symplectic_eigenvalues, size_t eig_len);
NFG_API nfg_status nfg_standard_form_of(const nfg_state* state, nfg_standard_form* params);

/* ---- overlaps ---------------------------------------------------------- */

NFG_API nfg_status nfg_overlap(const nfg_state* rho, const nfg_state* sigma, double* value, double* log_value);
NFG_API nfg_status nfg_purity(const nfg_state* rho, double* value);
NFG_API nfg_status nfg_fidelity(const nfg_state* rho, const nfg_state* sigma, double* value);
NFG_API nfg_status nfg_c_squared(const nfg_state* rho, const nfg_state* sigma, double* value);

/* ---- the correlation measure ------------------------------------------- */

NFG_API nfg_optimizer_config nfg_optimizer_default(void);
NFG_API nfg_status nfg_closed_form(const nfg_standard_form* params, nfg_result* result);
NFG_API nfg_status nfg_two_mode(const nfg_state* state, nfg_result* result);
/* config may be NULL for defaults. */
NFG_API nfg_status nfg_numeric(const nfg_state* state, const nfg_optimizer_config* config, nfg_result* result);
NFG_API nfg_status nfg_upper_bound(const nfg_state* state, double* value);

/* ---- channels on subsystem B ------------------------------------------- */

/* k and m_noise have (2*modes)^2 entries; d_bar may be NULL. */
NFG_API nfg_status nfg_channel_create(int modes, const double* k, const double* m_noise, const double* d_bar,
                                      nfg_channel** out);
NFG_API void nfg_channel_destroy(nfg_channel* channel);
NFG_API nfg_status nfg_apply_channel(const nfg_state* state, const nfg_channel* channel, nfg_state** out);
NFG_API nfg_status nfg_after_channel_closed_form(const nfg_standard_form* params, const nfg_channel* channel,
                                                 nfg_result* result);
/* Closed form for a general (1+1)-mode state; no standard-form precondition. */
NFG_API nfg_status nfg_state_after_channel_closed_form(const nfg_state* state, const nfg_channel* channel,
                                                       nfg_result* result);
NFG_API nfg_status nfg_check_monotonicity(const nfg_state* state, const nfg_channel* channel,
                                          nfg_monotonicity* report);

/* ---- symmetric squeezed thermal states --------------------------------- */

NFG_API nfg_status nfg_ssts_measures(double n_bar, double mu, nfg_sweep_row* row);
NFG_API nfg_status nfg_ssts_limit(double mu, double* value);
NFG_API nfg_status nfg_figure_grid(int figure, nfg_sweep_grid* grid);
/* Writes up to capacity rows; *count receives the total number of rows. Pass
 * rows = NULL to query the size. Returns NFG_ERR_BUFFER_TOO_SMALL when
 * capacity < total. */
NFG_API nfg_status nfg_sweep(const nfg_sweep_grid* grid, nfg_sweep_row* rows, size_t capacity, size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* NFG_NFG_H */
