// Copyright 2026 The spinsqz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the spinsqz library.
 *
 * Every function that can fail returns an sqz_status. On failure the message
 * of the error is available from sqz_last_error() on the same thread until
 * the next failing call. Objects returned through out-pointers are owned by
 * the caller and released with the matching *_free function.
 *
 * Complex arrays are interleaved (re, im). Matrices are column-major with
 * leading dimension N + 1, in the Dicke basis ordered m = -N/2 ... N/2.
 */

#ifndef SPINSQZ_SPINSQZ_H_
#define SPINSQZ_SPINSQZ_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SQZ_API __declspec(dllexport)
#else
#define SQZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqz_status {
  SQZ_OK = 0,
  SQZ_ERR_INVALID_ARGUMENT = 1,
  SQZ_ERR_CONFIG = 2,
  SQZ_ERR_NUMERICAL = 3,
  SQZ_ERR_DIMENSION = 4,
  SQZ_ERR_STEP_SIZE = 5,
  SQZ_ERR_IO = 6,
  SQZ_ERR_INTERNAL = 7
} sqz_status;

typedef struct sqz_state sqz_state;
typedef struct sqz_operator sqz_operator;
typedef struct sqz_model sqz_model;
typedef struct sqz_trajectory sqz_trajectory;
typedef struct sqz_config sqz_config;

SQZ_API const char* sqz_version(void);
SQZ_API const char* sqz_last_error(void);
SQZ_API const char* sqz_status_name(sqz_status status);

/* ---- states ---- */

SQZ_API sqz_status sqz_state_basis(int n_atoms, int m_index, sqz_state** out);
SQZ_API sqz_status sqz_state_coherent(int n_atoms, double theta, double phi, sqz_state** out);
SQZ_API sqz_status sqz_state_bw(int n_atoms, sqz_state** out);
SQZ_API sqz_status sqz_state_maximally_mixed(int n_atoms, sqz_state** out);
/* amplitudes: 2 (N + 1) doubles. */
SQZ_API sqz_status sqz_state_from_amplitudes(int n_atoms, const double* amplitudes, sqz_state** out);
/* rho: 2 (N + 1)^2 doubles. */
SQZ_API sqz_status sqz_state_from_density(int n_atoms, const double* rho, sqz_state** out);
SQZ_API void sqz_state_free(sqz_state* state);

SQZ_API int sqz_state_n_atoms(const sqz_state* state);
SQZ_API int sqz_state_is_pure(const sqz_state* state);
/* Fails with SQZ_ERR_INVALID_ARGUMENT for a mixed state or a short buffer. */
SQZ_API sqz_status sqz_state_amplitudes(const sqz_state* state, double* out, size_t len);
SQZ_API sqz_status sqz_state_density(const sqz_state* state, double* out, size_t len);
SQZ_API sqz_status sqz_state_rotate(const sqz_state* state, const double axis[3], double angle,
                                    sqz_state** out);

/* ---- collective operators ---- */

/* kind: jplus, jminus, jx, jy, jz, jx2, jz2, j2, tact */
SQZ_API sqz_status sqz_operator_build(const char* kind, int n_atoms, sqz_operator** out);
SQZ_API void sqz_operator_free(sqz_operator* op);
SQZ_API sqz_status sqz_operator_matrix(const sqz_operator* op, double* out, size_t len);
SQZ_API sqz_status sqz_expectation(const sqz_state* state, const sqz_operator* op, double* re,
                                   double* im);

/* ---- models and time evolution ---- */

typedef struct sqz_model_params {
  const char* family; /* dicke, pdd, oat, tact_rwa, vc */
  int n_atoms;
  double delta;
  double chi;
  double omega;
  double gamma0;
} sqz_model_params;

typedef struct sqz_step_control {
  double dt;
  int record_every;
  int renormalize;
  int check_positivity;
} sqz_step_control;

SQZ_API sqz_status sqz_model_create(const sqz_model_params* params, sqz_model** out);
SQZ_API void sqz_model_free(sqz_model* model);
SQZ_API sqz_status sqz_default_step_control(const sqz_model* model, sqz_step_control* out);

SQZ_API sqz_status sqz_evolve(const sqz_state* initial, const sqz_model* model, double t0,
                              double t1, const sqz_step_control* control, sqz_trajectory** out);
SQZ_API void sqz_trajectory_free(sqz_trajectory* trajectory);
SQZ_API size_t sqz_trajectory_size(const sqz_trajectory* trajectory);
SQZ_API sqz_status sqz_trajectory_time(const sqz_trajectory* trajectory, size_t index, double* t);
/* Copy of the recorded state. */
SQZ_API sqz_status sqz_trajectory_state(const sqz_trajectory* trajectory, size_t index,
                                        sqz_state** out);

/* ---- metrology ---- */

typedef struct sqz_qfim {
  double matrix[9];      /* row-major */
  double eigenvalues[3]; /* descending */
  double generators[9];  /* row k is the unit eigenvector of eigenvalues[k] */
} sqz_qfim;

SQZ_API sqz_status sqz_qfim_compute(const sqz_state* state, sqz_qfim* out);
SQZ_API sqz_status sqz_qcrb(double lambda_max, long long measurements, double* out);
SQZ_API sqz_status sqz_db_gain(double lambda_max, int n_atoms, double* out);
SQZ_API sqz_status sqz_holevo_variance(const sqz_state* state, double* out);
/* angles (optional): Euler angles a, b, c of exp(-i a Jz) exp(-i b Jy) exp(-i c Jz). */
SQZ_API sqz_status sqz_aligned_fidelity(const sqz_state* state, const sqz_state* target,
                                        double* fidelity, double angles[3]);

/* ---- Bayesian phase estimation ---- */

typedef struct sqz_protocol_point {
  long long measurements;
  double sigma;
  double qcrb;
  double mean;
} sqz_protocol_point;

/* out receives N + 1 probabilities. */
SQZ_API sqz_status sqz_measurement_distribution(const sqz_state* state, const double generator[3],
                                                double phi, double* out, size_t len);
/* Posterior window [-half_width, half_width). *count receives the number of
 * recorded points; points may be NULL to query it. */
SQZ_API sqz_status sqz_run_protocol(const sqz_state* state, long long m_max, double phi_true,
                                    uint64_t seed, double half_width, sqz_protocol_point* points,
                                    size_t capacity, size_t* count);

/* ---- cavity parameters ---- */

typedef struct sqz_lab_inputs {
  double Lambda;
  double gamma;
  double kappa;
  double Delta_a;
  double Delta_c;
  double eta0;
  double tau;
  double omega_r;
  double k;
  double g;
  int n_atoms;
  int has_kgtau; /* nonzero: use kgtau instead of k g tau */
  double kgtau;
} sqz_lab_inputs;

typedef struct sqz_cavity_params {
  double U0;
  double Delta_c_prime;
  double beta0_re;
  double beta0_im;
  double beta0; /* modulus */
  double chi0;
  double Gamma0;
  double omega_g;
  double epsilon;
} sqz_cavity_params;

#define SQZ_LEDGER_SIZE 6

typedef struct sqz_ledger {
  double ratio[SQZ_LEDGER_SIZE];
  int pass[SQZ_LEDGER_SIZE];
  int marginal[SQZ_LEDGER_SIZE];
} sqz_ledger;

typedef struct sqz_drive_sample {
  double beta_re;
  double beta_im;
  double delta_c_prime;
  double eta_re;
  double eta_im;
  int eta_divergent;
} sqz_drive_sample;

SQZ_API sqz_status sqz_cavity_derive(const sqz_lab_inputs* inputs, sqz_cavity_params* out);
SQZ_API sqz_status sqz_cavity_ledger(const sqz_lab_inputs* inputs, sqz_ledger* out);
/* Stable ledger entry names; NULL outside [0, SQZ_LEDGER_SIZE). */
SQZ_API const char* sqz_ledger_name(int index);
SQZ_API sqz_status sqz_drive_profile(double beta0_re, double beta0_im, double omega,
                                     double delta_c_prime0, double kappa, double t,
                                     sqz_drive_sample* out);

/* ---- configs and scenarios ---- */

SQZ_API sqz_status sqz_config_load(const char* path, sqz_config** out);
SQZ_API sqz_status sqz_config_parse(const char* text, sqz_config** out);
SQZ_API void sqz_config_free(sqz_config* config);
SQZ_API sqz_status sqz_config_validate(const sqz_config* config);

/* Text outputs follow one convention: *needed (optional) receives the size
 * including the terminating NUL; buf may be NULL to query it; a non-NULL buf
 * shorter than that fails with SQZ_ERR_INVALID_ARGUMENT. */

/* Runs the scenario; output_dir may be NULL to use the config's output_dir.
 * The newline-separated list of written files is copied into buf, truncated
 * to fit rather than failing, since the files already exist at that point. */
SQZ_API sqz_status sqz_run_scenario(const sqz_config* config, const char* output_dir, char* buf,
                                    size_t len, size_t* needed);
SQZ_API sqz_status sqz_ledger_report(const sqz_config* config, char* buf, size_t len,
                                     size_t* needed);
SQZ_API sqz_status sqz_metadata_text(const sqz_config* config, char* buf, size_t len,
                                     size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* SPINSQZ_SPINSQZ_H_ */
