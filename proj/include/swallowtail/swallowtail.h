/*
 * C interface to the swallowtail library.
 *
 * Every function returns an st_status. On failure the message of the most
 * recent error on the calling thread is available from st_last_error().
 * Variable-sized results (steepest paths, scan grids) are returned as opaque
 * handles that the caller releases with the matching *_free function.
 */
#ifndef SWALLOWTAIL_H
#define SWALLOWTAIL_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SWALLOWTAIL_BUILDING_LIBRARY)
#    define ST_API __declspec(dllexport)
#  else
#    define ST_API __declspec(dllimport)
#  endif
#else
#  define ST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum st_status {
  ST_OK = 0,
  ST_INVALID_ARGUMENT = 1,
  ST_TOLERANCE_NOT_REACHED = 2,
  ST_DEGENERATE_SCALING = 3,
  ST_PATH_STALLED = 4,
  ST_NO_CONVERGENCE = 5,
  ST_SEED_OUT_OF_RANGE = 6,
  ST_REGIME_ERROR = 7,
  ST_DOMAIN_ERROR = 8,
  ST_IO_ERROR = 9,
  ST_INTERNAL_ERROR = 10
} st_status;

typedef enum st_form { ST_FORM_S = 0, ST_FORM_Q = 1 } st_form;
typedef enum st_branch { ST_BRANCH_POSITIVE_Z = 0, ST_BRANCH_NEGATIVE_Z = 1 } st_branch;
typedef enum st_sign { ST_SIGN_POSITIVE = 0, ST_SIGN_NEGATIVE = 1 } st_sign;
typedef enum st_regime {
  ST_REGIME_TWO_CONJUGATE_PAIRS = 0,
  ST_REGIME_REAL_PAIR_PLUS_CONJUGATE_PAIR = 1,
  ST_REGIME_DEGENERATE = 2
} st_regime;
typedef enum st_direction { ST_DIRECTION_LEFT = 0, ST_DIRECTION_RIGHT = 1 } st_direction;

typedef struct st_params {
  double x, y, z;
  st_form form;
} st_params;

typedef struct st_quad_config {
  double target_abs_tol;
  int max_subdivisions;
  double truncation_safety;
} st_quad_config;

typedef struct st_eval_result {
  double re, im;
  double abs_error_estimate;
  int subdivisions_used;
} st_eval_result;

typedef struct st_scaled_params {
  double lambda;
  double gamma;
  st_sign sign_z;
} st_scaled_params;

typedef struct st_saddle_set {
  double re[4], im[4];
  st_regime regime;
  double p, q1, q2;
} st_saddle_set;

typedef struct st_contribution {
  int saddle_index;
  double amplitude_re, amplitude_im;
  double exponent_real, exponent_imag;
} st_contribution;

typedef struct st_obstruction_report {
  double t1, t2;
  double phase_sum, curvature_sum;
  double curvature_t1, curvature_t2;
  int phase_condition_violated;
  int curvature_condition_violated;
  int both_nonzero;
} st_obstruction_report;

typedef struct st_refine_options {
  double residual_tolerance;
  int max_iterations;
  int max_halvings;
  double z_cutoff;
  int relative_residual;
} st_refine_options;

typedef struct st_refined_zero {
  double z, seed, residual;
  int m, iterations;
  st_branch branch;
} st_refined_zero;

typedef struct st_confinement_options {
  double residual_tolerance;
  int max_iterations;
  int max_halvings;
  double z_cutoff;
  double y_limit;
  double step_tolerance;
} st_confinement_options;

typedef struct st_confinement_record {
  double seed_y, seed_z;
  int converged;
  double final_y, final_z, final_modulus;
  int iterations;
} st_confinement_record;

typedef struct st_trace_options {
  double initial_step;
  double cutoff_radius;
  double level_tolerance;
  double min_step;
  int max_steps;
} st_trace_options;

typedef struct st_scan_region {
  double y_min, y_max, z_min, z_max;
  int ny, nz;
} st_scan_region;

typedef struct st_scan_cell {
  double y, z;
  double re, im;
  double abs_q;
  double abs_error_estimate;
  int tol_miss;
} st_scan_cell;

typedef struct st_path st_path;
typedef struct st_scan st_scan;

ST_API const char* st_version(void);
ST_API const char* st_last_error(void);
ST_API const char* st_status_name(st_status status);

/* Library defaults. */
ST_API void st_quad_config_default(st_quad_config* cfg);
ST_API void st_quad_config_refinement(st_quad_config* cfg);
ST_API void st_refine_options_default(st_refine_options* opts);
ST_API void st_confinement_options_default(st_confinement_options* opts);
ST_API void st_trace_options_default(st_trace_options* opts);

/* params */
ST_API st_status st_s_to_q(const st_params* in, st_params* out, double* value_factor);
ST_API st_status st_q_to_s(const st_params* in, st_params* out, double* value_factor);
ST_API st_status st_conjugate_reflection(const st_params* in, st_params* out);

/* oracle; cfg may be NULL for defaults */
ST_API st_status st_eval(const st_params* p, const st_quad_config* cfg, st_eval_result* out);
ST_API st_status st_eval_q_moment(const st_params* p, int k, const st_quad_config* cfg, st_eval_result* out);
ST_API st_status st_integrand_peak(const st_params* p, double* peak);

/* saddle */
ST_API st_status st_scale(const st_params* p, st_scaled_params* out);
ST_API st_status st_saddles(const st_scaled_params* sp, st_saddle_set* out);
ST_API st_status st_phase_at_saddle(const st_scaled_params* sp, int k, double* re, double* im);
ST_API double st_caustic_gamma(void);
ST_API st_status st_classify_regime(const st_scaled_params* sp, st_regime* out);
ST_API double st_valley_angle(int sector);

/* opts may be NULL for the defaults. */
ST_API st_status st_trace_steepest(const st_scaled_params* sp, int k, st_direction direction,
                                   const st_trace_options* opts, st_path** out);
ST_API size_t st_path_size(const st_path* path);
ST_API st_status st_path_point(const st_path* path, size_t i, double* re, double* im);
ST_API int st_path_saddle_index(const st_path* path);
ST_API int st_path_terminal_sector(const st_path* path);
ST_API double st_path_terminal_angle(const st_path* path);
ST_API void st_path_free(st_path* path);

/* asymptotics */
ST_API st_status st_leading_q00(double z, int include_subdominant, double* out);
ST_API st_status st_predicted_zeros(st_branch branch, int m_max, st_form form, double* z_out, size_t capacity);
ST_API st_status st_predicted_extrema(st_branch branch, int m, double* z_inner, double* z_outer);
ST_API st_status st_pearcey_hill_zeros(int n_max, double* y_out, size_t capacity);
ST_API double st_transport_to_pearcey_hill(double z_q);
ST_API st_status st_saddle_contribution(const st_scaled_params* sp, int k, st_contribution* out);
ST_API st_status st_dominance_gap(const st_scaled_params* sp, double* gap);
ST_API st_status st_below_caustic_obstruction(const st_scaled_params* sp, st_obstruction_report* out);

/* zeros; cfg/opts may be NULL for defaults */
ST_API st_status st_refine_on_axis(st_branch branch, int m, const st_quad_config* cfg,
                                   const st_refine_options* opts, st_refined_zero* out);
ST_API st_status st_axis_confinement_scan(double y0, st_branch branch, int m, const st_quad_config* cfg,
                                          const st_confinement_options* opts, st_confinement_record* out);

ST_API st_status st_modulus_scan(const st_scan_region* region, const st_quad_config* cfg, unsigned threads,
                                 st_scan** out);
ST_API st_status st_scan_dims(const st_scan* scan, int* ny, int* nz);
ST_API st_status st_scan_cell_at(const st_scan* scan, int iy, int iz, st_scan_cell* out);
ST_API long st_scan_argmin(const st_scan* scan);
ST_API int st_scan_flagged_count(const st_scan* scan);
/* Writes up to `capacity` sign-change locations along y = 0 rows; *count gets the total. */
ST_API st_status st_scan_axis_sign_changes(const st_scan* scan, double* z_out, size_t capacity, size_t* count);
/* CSV with header "y,z,abs_q,flag", one row per cell, flag in {ok, tol_miss}. */
ST_API st_status st_scan_write_csv(const st_scan* scan, const char* path);
ST_API void st_scan_free(st_scan* scan);

#ifdef __cplusplus
}
#endif

#endif /* SWALLOWTAIL_H */
