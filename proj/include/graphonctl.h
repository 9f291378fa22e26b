// Copyright 2026 The graphonctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the graphonctl library. Every handle is opaque and owned
 * by the caller, who releases it with the matching *_free function. Every
 * fallible call returns a gcx_status; on failure gcx_last_error() describes
 * the problem for the calling thread. Strings returned through char** are
 * heap copies released with gcx_string_free. Matrices are row-major. An
 * output array whose length is zero may be NULL. */

#ifndef GRAPHONCTL_H_
#define GRAPHONCTL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GCX_API __declspec(dllexport)
#else
#define GCX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gcx_status {
  GCX_OK = 0,
  GCX_INVALID_ARGUMENT = 1,
  GCX_INCOMPATIBLE_DISCRETIZATION = 2,
  GCX_UNSUPPORTED_REPRESENTATION = 3,
  GCX_PARSE_ERROR = 4,
  GCX_IO_ERROR = 5,
  GCX_NUMERIC_ERROR = 6,
  GCX_NOT_CONTROLLABLE = 7,
  GCX_INTERNAL_ERROR = 99
} gcx_status;

typedef enum gcx_normalization { GCX_NORMALIZE_MAX_ABS = 0, GCX_NORMALIZE_NONE = 1 } gcx_normalization;

typedef enum gcx_operator_function { GCX_POWER = 0, GCX_EXPONENTIAL = 1 } gcx_operator_function;

typedef struct gcx_dataset gcx_dataset;
typedef struct gcx_graphon gcx_graphon;
typedef struct gcx_spectrum gcx_spectrum;
typedef struct gcx_system gcx_system;
typedef struct gcx_min_energy gcx_min_energy;
typedef struct gcx_epidemic gcx_epidemic;
typedef struct gcx_riccati gcx_riccati;
typedef struct gcx_run gcx_run;
typedef struct gcx_projection gcx_projection;

GCX_API const char* gcx_version(void);
GCX_API const char* gcx_last_error(void);
GCX_API void gcx_string_free(char* s);
/* 0 restores the default (GRAPHON_CTL_THREADS or hardware concurrency). */
GCX_API void gcx_set_max_threads(size_t n);

/* ---- files and formatting ---- */

GCX_API gcx_status gcx_read_file(const char* path, char** contents, size_t* length);
GCX_API gcx_status gcx_write_file_atomic(const char* path, const char* data, size_t length);
/* CSV with a header row and %.17g cells; data holds rows*cols values. */
GCX_API gcx_status gcx_format_csv(const char* const* header, size_t cols, const double* data, size_t rows, char** out);

/* ---- datasets ---- */

GCX_API gcx_status gcx_dataset_load(const char* path, int directed, gcx_dataset** out);
GCX_API gcx_status gcx_dataset_parse_edge_list(const char* text, size_t length, int directed, gcx_dataset** out);
GCX_API gcx_status gcx_dataset_parse_matrix_market(const char* text, size_t length, gcx_dataset** out);
GCX_API gcx_status gcx_dataset_sample(const gcx_graphon* g, size_t n, uint64_t seed, gcx_dataset** out);
GCX_API gcx_status gcx_dataset_relabel_by_degree(const gcx_dataset* ds, gcx_dataset** out);
GCX_API void gcx_dataset_free(gcx_dataset* ds);

GCX_API size_t gcx_dataset_nodes(const gcx_dataset* ds);
GCX_API size_t gcx_dataset_edge_count(const gcx_dataset* ds);
GCX_API int gcx_dataset_is_symmetric(const gcx_dataset* ds);
GCX_API size_t gcx_dataset_warning_count(const gcx_dataset* ds);
GCX_API const char* gcx_dataset_warning(const gcx_dataset* ds, size_t index);
/* out receives nodes*nodes values. */
GCX_API gcx_status gcx_dataset_adjacency(const gcx_dataset* ds, double* out);
GCX_API gcx_status gcx_dataset_edge_list(const gcx_dataset* ds, char** out);
GCX_API gcx_status gcx_dataset_density(const gcx_dataset* ds, double* out);

GCX_API gcx_status gcx_spectral_report_json(const gcx_dataset* ds, double top_fraction, size_t bins,
                                            gcx_normalization normalization, char** json);

/* ---- graphons ---- */

GCX_API gcx_status gcx_graphon_step(const double* coeffs, size_t n, int checked, gcx_graphon** out);
GCX_API gcx_status gcx_graphon_sinusoidal(double a0, const double* b, size_t harmonics, gcx_graphon** out);
GCX_API gcx_status gcx_graphon_from_dataset(const gcx_dataset* ds, gcx_normalization normalization, int symmetrize,
                                            gcx_graphon** out);
GCX_API void gcx_graphon_free(gcx_graphon* g);

/* "step", "sinusoidal", "fourier" or "sampled". */
GCX_API const char* gcx_graphon_family(const gcx_graphon* g);
/* Number of blocks for step graphons, 0 otherwise. */
GCX_API size_t gcx_graphon_blocks(const gcx_graphon* g);
GCX_API gcx_status gcx_graphon_evaluate(const gcx_graphon* g, double x, double y, double* out);
GCX_API gcx_status gcx_graphon_l2_norm(const gcx_graphon* g, double* out);
GCX_API gcx_status gcx_graphon_operator_norm(const gcx_graphon* g, double* out);
GCX_API gcx_status gcx_graphon_l2_distance(const gcx_graphon* g, const gcx_graphon* h, double* out);
GCX_API gcx_status gcx_graphon_cut_norm(const gcx_graphon* g, size_t exact_limit, double* lower, double* upper,
                                        int* exact);
GCX_API gcx_status gcx_graphon_kernel_csv(const gcx_graphon* g, size_t resolution, char** out);
GCX_API gcx_status gcx_graphon_kernel_header(const gcx_graphon* g, size_t resolution, const char* normalization,
                                             char** out);

/* ---- spectral ---- */

GCX_API gcx_status gcx_decompose(const gcx_graphon* g, gcx_spectrum** out);
GCX_API void gcx_spectrum_free(gcx_spectrum* s);
GCX_API size_t gcx_spectrum_rank(const gcx_spectrum* s);
/* out receives rank values ordered by descending magnitude. */
GCX_API gcx_status gcx_spectrum_eigenvalues(const gcx_spectrum* s, double* out);
GCX_API gcx_status gcx_spectrum_truncation_error(const gcx_spectrum* s, size_t m, double* out);
GCX_API gcx_status gcx_spectrum_truncate(const gcx_spectrum* s, size_t m, gcx_graphon** out);
/* kernel may be NULL. */
GCX_API gcx_status gcx_fourier_truncate(const gcx_spectrum* s, size_t m, size_t order, double* truncation_term,
                                        double* fourier_term, double* bound, gcx_graphon** kernel);
GCX_API gcx_status gcx_operator_function_bound(const gcx_graphon* g, const gcx_graphon* g_pm,
                                               gcx_operator_function kind, int exponent, double* c, double* delta,
                                               double* bound);
GCX_API gcx_status gcx_operator_function_measured(const gcx_graphon* g, const gcx_graphon* g_pm,
                                                  gcx_operator_function kind, int exponent, size_t resolution,
                                                  double* out);
/* CSV table n,seed,error,sampled_i...,limit_i... for graphs sampled from g. */
GCX_API gcx_status gcx_convergence_experiment(const gcx_graphon* g, const size_t* sizes, size_t size_count,
                                              const uint64_t* seeds, size_t seed_count, size_t k, char** csv);

/* ---- controllability ---- */

GCX_API gcx_status gcx_system_create(double alpha0, double beta0, const gcx_graphon* a, const double* input_poly,
                                     size_t degree, double horizon, gcx_system** out);
GCX_API void gcx_system_free(gcx_system* sys);
GCX_API size_t gcx_system_rank(const gcx_system* sys);
GCX_API gcx_status gcx_system_eigenvalues(const gcx_system* sys, double* out);
GCX_API gcx_status gcx_system_eta(const gcx_system* sys, double* out);
/* Gramian s·I + Σ c_ℓ f_ℓ f_ℓᵀ: scalar part and rank coefficients. */
GCX_API gcx_status gcx_gramian(const gcx_system* sys, double* scalar, double* coefficients);
GCX_API gcx_status gcx_gramian_inverse(const gcx_system* sys, double* scalar, double* coefficients);
GCX_API gcx_status gcx_controllability(const gcx_system* sys, double tolerance, double* spectral_lower_bound,
                                       int* beta0_nonzero, int* controllable);
/* Max relative entrywise error between the closed form and Simpson
 * quadrature with the given intervals (step systems only). */
GCX_API gcx_status gcx_gramian_oracle_error(const gcx_system* sys, size_t intervals, double* relative_error);

/* x0 holds one value per block of the system's step graphon. */
GCX_API gcx_status gcx_min_energy_run(const gcx_system* sys, const double* x0, size_t blocks, double step,
                                      gcx_min_energy** out);
GCX_API void gcx_min_energy_free(gcx_min_energy* run);
GCX_API double gcx_min_energy_cost(const gcx_min_energy* run);
GCX_API double gcx_min_energy_realized(const gcx_min_energy* run);
GCX_API double gcx_min_energy_initial_norm(const gcx_min_energy* run);
GCX_API double gcx_min_energy_final_norm(const gcx_min_energy* run);
GCX_API size_t gcx_min_energy_steps(const gcx_min_energy* run);
GCX_API size_t gcx_min_energy_blocks(const gcx_min_energy* run);
GCX_API double gcx_min_energy_time(const gcx_min_energy* run, size_t k);
GCX_API gcx_status gcx_min_energy_state(const gcx_min_energy* run, size_t k, double* out);
GCX_API gcx_status gcx_min_energy_control(const gcx_min_energy* run, size_t k, double* out);

/* ---- epidemic ---- */

GCX_API gcx_status gcx_epidemic_create(const double* contact, size_t n, double alpha, double eta, double beta0,
                                       double q_t, double q_T, double horizon, gcx_epidemic** out);
GCX_API void gcx_epidemic_free(gcx_epidemic* m);
GCX_API size_t gcx_epidemic_nodes(const gcx_epidemic* m);
GCX_API size_t gcx_epidemic_rank(const gcx_epidemic* m);
GCX_API gcx_status gcx_epidemic_stability(const gcx_epidemic* m, double* lambda_max, int* stable);

/* steps = 0 selects the default grid. graphon_path solves with the step
 * graphon's decomposition instead of the adjacency spectrum. */
GCX_API gcx_status gcx_riccati_solve(const gcx_epidemic* m, size_t steps, int graphon_path, gcx_riccati** out);
GCX_API void gcx_riccati_free(gcx_riccati* sol);
GCX_API size_t gcx_riccati_times(const gcx_riccati* sol);
GCX_API size_t gcx_riccati_directions(const gcx_riccati* sol);
GCX_API double gcx_riccati_error_estimate(const gcx_riccati* sol);
GCX_API gcx_status gcx_riccati_time_grid(const gcx_riccati* sol, double* out);
GCX_API gcx_status gcx_riccati_breve(const gcx_riccati* sol, double* out);
GCX_API gcx_status gcx_riccati_pi(const gcx_riccati* sol, size_t direction, double* out);
GCX_API gcx_status gcx_riccati_eigenvalues(const gcx_riccati* sol, double* out);

/* sol == NULL runs without control. nonlinear selects the SIS dynamics,
 * otherwise the linearization. */
GCX_API gcx_status gcx_epidemic_run(const gcx_epidemic* m, const gcx_riccati* sol, const double* p0, double step,
                                    int nonlinear, gcx_run** out);
GCX_API void gcx_run_free(gcx_run* run);
GCX_API size_t gcx_run_steps(const gcx_run* run);
GCX_API double gcx_run_time(const gcx_run* run, size_t k);
GCX_API gcx_status gcx_run_state(const gcx_run* run, size_t k, double* out);
GCX_API gcx_status gcx_run_control(const gcx_run* run, size_t k, double* out);
GCX_API int gcx_run_left_validity_range(const gcx_run* run);
GCX_API gcx_status gcx_run_cost(const gcx_epidemic* m, const gcx_run* run, double* out);

GCX_API gcx_status gcx_projection_create(const gcx_epidemic* m, const gcx_run* run, gcx_projection** out);
GCX_API void gcx_projection_free(gcx_projection* p);
GCX_API size_t gcx_projection_rank(const gcx_projection* p);
/* rank values pᵀv_ℓ (resp. uᵀv_ℓ) at time index k. */
GCX_API gcx_status gcx_projection_state_coefficients(const gcx_projection* p, size_t k, double* out);
GCX_API gcx_status gcx_projection_control_coefficients(const gcx_projection* p, size_t k, double* out);
/* nodes values. */
GCX_API gcx_status gcx_projection_auxiliary_state(const gcx_projection* p, size_t k, double* out);
GCX_API gcx_status gcx_projection_auxiliary_control(const gcx_projection* p, size_t k, double* out);
/* max over time of ‖Σ eigenstates + auxiliary − p‖∞. */
GCX_API gcx_status gcx_projection_reconstruction_error(const gcx_projection* p, const gcx_run* run, double* out);

#ifdef __cplusplus
}
#endif

#endif
