// Copyright 2026 The qstack Authors
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

#ifndef QSTACK_QSTACK_H
#define QSTACK_QSTACK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QS_API __declspec(dllexport)
#else
#define QS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qs_status {
  QS_OK = 0,
  QS_ERR_VALIDATION = 1, /* a parameter violates a documented constraint */
  QS_ERR_INTERNAL = 2,
} qs_status;

/* Message for the last failing call on this thread; empty if none. */
QS_API const char* qs_last_error(void);
QS_API const char* qs_version(void);

/* ---- result tables ---------------------------------------------------- */

typedef struct qs_table qs_table;

QS_API void qs_table_free(qs_table* table);
QS_API size_t qs_table_column_count(const qs_table* table);
QS_API size_t qs_table_row_count(const qs_table* table);
QS_API const char* qs_table_column_name(const qs_table* table, size_t column);
/* Returns 1 if the cell holds a number, 0 if it holds text. */
QS_API int qs_table_cell_is_number(const qs_table* table, size_t row, size_t column);
QS_API qs_status qs_table_number(const qs_table* table, size_t row, size_t column, double* out);
/* Text cell; the pointer lives as long as the table. */
QS_API const char* qs_table_text(const qs_table* table, size_t row, size_t column);
/* Writes CSV to `path`, or to stdout when path is NULL or "-". */
QS_API qs_status qs_table_write_csv(const qs_table* table, const char* path);
/* CSV as a newly allocated string; release with qs_string_free. */
QS_API qs_status qs_table_to_csv(const qs_table* table, char** out);
QS_API void qs_string_free(char* s);
/* Builds a numeric table, for callers assembling their own results. */
QS_API qs_status qs_table_create(const char* const* columns, size_t column_count, qs_table** out);
QS_API qs_status qs_table_add_row(qs_table* table, const double* values, size_t count);

/* ---- shared noise model ----------------------------------------------- */

typedef struct qs_noise {
  double depolarizing_prob;     /* per gate, per involved qubit */
  double measurement_flip_prob; /* per readout bit */
} qs_noise;

/* Runs one noisy shot of a text circuit; writes a NUL-terminated bitstring
 * (qubit 0 first) into `bits`, which must hold n_qubits + 1 chars. */
QS_API qs_status qs_run_noisy(int n_qubits, const char* circuit, qs_noise noise, uint64_t seed,
                              char* bits, size_t capacity);

/* ---- randomised benchmarking ------------------------------------------ */

typedef struct qs_rb_params {
  int n_qubits;
  const int* depths;
  size_t depth_count;
  int sequences_per_depth;
  int reuse_factor;
  qs_noise noise;
  uint64_t seed;
  unsigned threads;
} qs_rb_params;

QS_API void qs_rb_params_init(qs_rb_params* params);
/* survival: m, n_circuits, shots_per_circuit, survival_mean, survival_stderr
 * fit: A, B, p, residual, method */
QS_API qs_status qs_rb_run(const qs_rb_params* params, qs_table** survival, qs_table** fit);

/* ---- zero-noise extrapolation ----------------------------------------- */

typedef enum qs_zne_scaling { QS_ZNE_FOLDING = 0, QS_ZNE_PARAMETER = 1 } qs_zne_scaling;

typedef struct qs_zne_params {
  int n_qubits;
  const char* circuit;     /* text form, e.g. "h 0; rz 0.3 0" */
  const char* observable;  /* one of I/X/Y/Z per qubit */
  qs_zne_scaling scaling;
  const double* levels;
  size_t level_count;
  int shots_per_level;
  double reference_variance;
  const char* methods;     /* comma list: richardson, linear, polyK, exponential */
  qs_noise noise;
  uint64_t seed;
  unsigned threads;
} qs_zne_params;

QS_API void qs_zne_params_init(qs_zne_params* params);
/* levels: lambda, shots, e_mean, e_stderr
 * extrapolation: method, e_zero, residual, fallback, coefficients */
QS_API qs_status qs_zne_run(const qs_zne_params* params, qs_table** levels, qs_table** extrapolation);
/* Zero-noise value from (lambda, value) pairs; method as in qs_zne_params. */
QS_API qs_status qs_zne_extrapolate(const double* lambdas, const double* values, size_t count,
                                    const char* method, double* e_zero, int* fell_back);

/* ---- repeated-circuit sampling statistics ----------------------------- */

typedef struct qs_variance_params {
  double mu;
  double target;
  const double* sigma2s;
  size_t sigma2_count;
  const uint64_t* reuse;
  size_t reuse_count;
} qs_variance_params;

QS_API void qs_variance_params_init(qs_variance_params* params);
/* sigma2, l, samples_required */
QS_API qs_status qs_variance_run(const qs_variance_params* params, qs_table** out);
QS_API qs_status qs_var_scheme1(double mu, double sigma2, uint64_t k, uint64_t l, double* out);
QS_API qs_status qs_var_scheme2(double mu, double sigma2, uint64_t k, uint64_t l, double* out);
/* max_circuits = 0 means no cap; *feasible is 0 when the cap is exceeded. */
QS_API qs_status qs_samples_required(double mu, double sigma2, uint64_t l, double target,
                                     uint64_t max_circuits, uint64_t* shots, int* feasible);

/* ---- accelerated VQE -------------------------------------------------- */

typedef struct qs_avqe_params {
  double alpha;
  double precision;
  int batch_size;
  int max_iterations;
  int min_accept;
  double inflation;
  int lattice_draws;       /* nonzero: shifted-lattice candidates */
  int scale_to_batch_max;  /* nonzero: acceptance P / max over the batch */
  int relative_moments;    /* nonzero: moments relative to the batch */
  int weighted_moments;    /* nonzero: likelihood-weighted moments */
  double prior_mu;
  double prior_sigma;
  uint64_t seed;
} qs_avqe_params;

QS_API void qs_avqe_params_init(qs_avqe_params* params);

typedef struct qs_avqe_result {
  double mu;
  double sigma;
  int iterations;
  int converged;
  int sign;
} qs_avqe_result;

/* One run against the exact likelihood for phase `phi`; sign 0 draws it.
 * history: iter, M, theta, E, accepted, mu, sigma (may be NULL). */
QS_API qs_status qs_avqe_run(const qs_avqe_params* params, double phi, int sign, qs_avqe_result* result,
                             qs_table** history);
/* Energy of sum_i coeff_i P_i on the state prepared by `circuit`;
 * hamiltonian text like "0.5 ZI; -0.25 XX". */
QS_API qs_status qs_avqe_energy(const qs_avqe_params* params, int n_qubits, const char* circuit,
                                const char* hamiltonian, double* energy, int* converged);
QS_API qs_status qs_n_measurements(double p, double alpha, double* out);
QS_API qs_status qs_alpha_max(double p, double d, double* out);
QS_API qs_status qs_n_min(double p, double d, double* out);

/* alpha, p, n_formula, n_empirical_median (runs == 0 skips simulation) */
QS_API qs_status qs_avqe_measurements(const qs_avqe_params* base, const double* ps, size_t p_count,
                                      const double* alphas, size_t alpha_count, int runs, double phi,
                                      unsigned threads, qs_table** out);
/* p, d, alpha_max, n_min */
QS_API qs_status qs_avqe_nmin(const double* ps, size_t p_count, const double* ds, size_t d_count,
                              qs_table** out);
/* alpha, vqe_gates, avqe_gates, n_P. Depth counts are per-depth medians
 * over `runs` seeds and are shared across the n_P values. */
QS_API qs_status qs_avqe_gates(const qs_avqe_params* base, const double* alphas, size_t alpha_count,
                               const int* prep_gates, size_t prep_gates_count, int runs, double phi,
                               unsigned threads, qs_table** out);

/* ---- control-stack cost models ---------------------------------------- */

QS_API qs_status qs_bandwidth(double n_qubits, double utilisation, double bytes_per_gate, double gate_time,
                              double* out);
/* gate_time_s, n_qubits, bandwidth_Bps */
QS_API qs_status qs_bandwidth_table(const double* gate_times, size_t gate_time_count, const double* qubits,
                                    size_t qubit_count, double utilisation, double bytes_per_gate,
                                    qs_table** out);

typedef struct qs_runtime_params {
  const char* profiles;  /* comma list of superconducting, trapped_ion */
  const double* latencies;
  size_t latency_count;
  const int* depths;
  size_t depth_count;
  int prep_gates;           /* < 0 selects the depth-only circuit model */
} qs_runtime_params;

QS_API void qs_runtime_params_init(qs_runtime_params* params);
/* latency_s, M, T_s, profile */
QS_API qs_status qs_runtime_table(const qs_runtime_params* params, qs_table** out);

typedef struct qs_utilization_params {
  const char* profile;
  double circuit_time;
  uint64_t target_zeros;
  double zero_probability;
  int local_update;
  uint64_t seed;
} qs_utilization_params;

QS_API void qs_utilization_params_init(qs_utilization_params* params);
/* profile, circuit_time_s, idle_closed_form, idle_simulated, iterations, wall_time_s */
QS_API qs_status qs_utilization(const qs_utilization_params* params, qs_table** out);

/* f, k, log10_seconds */
QS_API qs_status qs_backlog_table(const double* ratios, size_t ratio_count, const double* ks, size_t k_count,
                                  double t_cycle, qs_table** out);
QS_API qs_status qs_qec_bandwidth(double n_qubits, double op_rate_hz, double bytes_per_instruction,
                                  double* out);

/* ---- surface-code decoding -------------------------------------------- */

typedef struct qs_decoder qs_decoder;

QS_API qs_status qs_decoder_create(int distance, int rounds, qs_decoder** out);
QS_API void qs_decoder_free(qs_decoder* decoder);
QS_API size_t qs_decoder_vertex_count(const qs_decoder* decoder);
QS_API size_t qs_decoder_edge_count(const qs_decoder* decoder);
/* Samples phenomenological noise; writes hot vertices and true error edges.
 * Counts are always reported; buffers may be NULL to query sizes. */
QS_API qs_status qs_decoder_sample(const qs_decoder* decoder, double p_data, double p_meas, uint64_t seed,
                                   int* hot, size_t hot_capacity, size_t* hot_count, int* errors,
                                   size_t error_capacity, size_t* error_count);
QS_API qs_status qs_decoder_decode(const qs_decoder* decoder, const int* hot, size_t hot_count, int* correction,
                                   size_t capacity, size_t* correction_count, uint64_t* work);
QS_API qs_status qs_decoder_syndrome(const qs_decoder* decoder, const int* edges, size_t edge_count, int* hot,
                                     size_t capacity, size_t* hot_count);
/* 1 if error xor correction spans the lattice. */
QS_API qs_status qs_decoder_logical_flip(const qs_decoder* decoder, const int* errors, size_t error_count,
                                         const int* correction, size_t correction_count, int* flipped);

/* shot, n_hot, correction_weight, work, syndrome_matches, logical_failure */
QS_API qs_status qs_qec_decode_table(int distance, int rounds, double p_data, double p_meas, uint64_t shots,
                                     uint64_t seed, qs_table** out);
/* d, p, shots, p_log, p_log_stderr */
QS_API qs_status qs_qec_logical_table(const int* distances, size_t distance_count, const double* ps,
                                      size_t p_count, uint64_t shots, uint64_t seed, unsigned threads,
                                      qs_table** out);
/* d, p, W_max, p_toe, inequality_holds; work_budget < 0 means unlimited.
 * work (optional): shot, work_units */
QS_API qs_status qs_qec_timeout(int distance, double p, int64_t work_budget, uint64_t shots, uint64_t seed,
                                unsigned threads, qs_table** out, qs_table** work);
QS_API qs_status qs_sqv(double n_logical, double p_logical, double* out);

#ifdef __cplusplus
}
#endif

#endif /* QSTACK_QSTACK_H */
