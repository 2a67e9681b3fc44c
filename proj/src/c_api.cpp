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

#include "qstack/qstack.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "qstack/avqe.hpp"
#include "qstack/error.hpp"
#include "qstack/qec.hpp"
#include "qstack/rb.hpp"
#include "qstack/sampling_stats.hpp"
#include "qstack/sim.hpp"
#include "qstack/stack_model.hpp"
#include "qstack/table.hpp"
#include "qstack/version.hpp"
#include "qstack/zne.hpp"

struct qs_table {
  qstack::Table table;
};

struct qs_decoder {
  qstack::DecodingGraph graph;
};

namespace {

using namespace qstack;

thread_local std::string g_last_error;

template <typename F>
qs_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return QS_OK;
  } catch (const ValidationError& e) {
    g_last_error = e.what();
    return QS_ERR_VALIDATION;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown internal error";
    return QS_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (!p) throw ValidationError(std::string(name) + " must not be NULL");
}

template <typename T>
std::vector<T> span_of(const T* data, std::size_t n, const char* name) {
  if (n == 0) return {};
  need(data, name);
  return std::vector<T>(data, data + n);
}

qs_table* wrap(Table t) { return new qs_table{std::move(t)}; }

NoiseModel to_noise(const qs_noise& n) { return {n.depolarizing_prob, n.measurement_flip_prob}; }

std::vector<std::string> split_list(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::string item;
  for (const char* c = text;; ++c) {
    if (*c == ',' || *c == '\0') {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
      item.clear();
      if (*c == '\0') break;
    } else {
      item += *c;
    }
  }
  return out;
}

AqpeConfig to_config(const qs_avqe_params& p) {
  AqpeConfig c;
  c.alpha = p.alpha;
  c.precision = p.precision;
  c.batch_size = p.batch_size;
  c.max_iterations = p.max_iterations;
  c.min_accept = p.min_accept;
  c.inflation = p.inflation;
  c.lattice_draws = p.lattice_draws != 0;
  c.scale_to_batch_max = p.scale_to_batch_max != 0;
  c.relative_moments = p.relative_moments != 0;
  c.weighted_moments = p.weighted_moments != 0;
  c.prior = {p.prior_mu, p.prior_sigma};
  c.seed = p.seed;
  c.validate();
  return c;
}

void copy_out(const std::vector<int>& v, int* buf, std::size_t cap, std::size_t* count, const char* name) {
  if (count) *count = v.size();
  if (!buf) return;
  if (v.size() > cap) throw ValidationError(std::string(name) + " buffer too small");
  std::copy(v.begin(), v.end(), buf);
}

std::vector<int> edge_list(const DecodingGraph& g, const int* edges, std::size_t n, const char* name) {
  std::vector<int> v = span_of(edges, n, name);
  for (int e : v) require(e >= 0 && static_cast<std::size_t>(e) < g.edges.size(), "edge id out of range");
  return v;
}

const int kDefaultDepths[] = {1, 2, 5, 10, 20, 50, 100};
const double kDefaultLevels[] = {1.0, 1.5, 2.0, 3.0, 5.0};
const double kDefaultSigma2[] = {0.0, 0.01, 0.05, 0.1};
const std::uint64_t kDefaultReuse[] = {1, 2, 5, 10};
const double kDefaultLatencies[] = {1e-6, 10e-6, 100e-6};

}  // namespace

extern "C" {

const char* qs_last_error(void) { return g_last_error.c_str(); }
const char* qs_version(void) { return QSTACK_VERSION; }

/* ---- tables ---- */

void qs_table_free(qs_table* table) { delete table; }
size_t qs_table_column_count(const qs_table* t) { return t ? t->table.columns.size() : 0; }
size_t qs_table_row_count(const qs_table* t) { return t ? t->table.rows.size() : 0; }

const char* qs_table_column_name(const qs_table* t, size_t column) {
  if (!t || column >= t->table.columns.size()) return nullptr;
  return t->table.columns[column].c_str();
}

int qs_table_cell_is_number(const qs_table* t, size_t row, size_t column) {
  if (!t || row >= t->table.rows.size() || column >= t->table.columns.size()) return 0;
  return std::holds_alternative<double>(t->table.rows[row][column]) ? 1 : 0;
}

qs_status qs_table_number(const qs_table* t, size_t row, size_t column, double* out) {
  return guarded([&] {
    need(t, "table");
    need(out, "out");
    require(row < t->table.rows.size() && column < t->table.columns.size(), "cell index out of range");
    const Cell& c = t->table.rows[row][column];
    require(std::holds_alternative<double>(c), "cell is not numeric");
    *out = std::get<double>(c);
  });
}

const char* qs_table_text(const qs_table* t, size_t row, size_t column) {
  if (!t || row >= t->table.rows.size() || column >= t->table.columns.size()) return nullptr;
  const std::string* s = std::get_if<std::string>(&t->table.rows[row][column]);
  return s ? s->c_str() : nullptr;
}

qs_status qs_table_write_csv(const qs_table* t, const char* path) {
  return guarded([&] {
    need(t, "table");
    const std::string csv = t->table.to_csv();
    if (!path || std::strcmp(path, "-") == 0) {
      std::fwrite(csv.data(), 1, csv.size(), stdout);
      std::fflush(stdout);
      return;
    }
    std::ofstream f(path, std::ios::binary);
    require(static_cast<bool>(f), std::string("cannot open '") + path + "' for writing");
    f << csv;
    require(static_cast<bool>(f), std::string("write to '") + path + "' failed");
  });
}

qs_status qs_table_to_csv(const qs_table* t, char** out) {
  return guarded([&] {
    need(t, "table");
    need(out, "out");
    const std::string csv = t->table.to_csv();
    char* buf = static_cast<char*>(std::malloc(csv.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, csv.c_str(), csv.size() + 1);
    *out = buf;
  });
}

void qs_string_free(char* s) { std::free(s); }

qs_status qs_table_create(const char* const* columns, size_t column_count, qs_table** out) {
  return guarded([&] {
    need(out, "out");
    std::vector<std::string> names;
    for (const char* c : span_of(columns, column_count, "columns")) {
      need(c, "column name");
      names.emplace_back(c);
    }
    *out = wrap(Table(std::move(names)));
  });
}

qs_status qs_table_add_row(qs_table* t, const double* values, size_t count) {
  return guarded([&] {
    need(t, "table");
    std::vector<Cell> row;
    for (double v : span_of(values, count, "values")) row.emplace_back(v);
    t->table.add_row(std::move(row));
  });
}

/* ---- simulator ---- */

qs_status qs_run_noisy(int n_qubits, const char* circuit, qs_noise noise, uint64_t seed, char* bits,
                       size_t capacity) {
  return guarded([&] {
    need(circuit, "circuit");
    need(bits, "bits");
    const std::string s = run_noisy(parse_circuit(n_qubits, circuit), to_noise(noise), seed);
    require(capacity > s.size(), "bits buffer too small");
    std::memcpy(bits, s.c_str(), s.size() + 1);
  });
}

/* ---- rb ---- */

void qs_rb_params_init(qs_rb_params* p) {
  if (!p) return;
  *p = {};
  p->n_qubits = 1;
  p->depths = kDefaultDepths;
  p->depth_count = std::size(kDefaultDepths);
  p->sequences_per_depth = 50;
  p->reuse_factor = 1;
}

qs_status qs_rb_run(const qs_rb_params* p, qs_table** survival, qs_table** fit) {
  return guarded([&] {
    need(p, "params");
    RbConfig c;
    c.n_qubits = p->n_qubits;
    c.depths = span_of(p->depths, p->depth_count, "depths");
    c.sequences_per_depth = p->sequences_per_depth;
    c.reuse_factor = p->reuse_factor;
    c.noise = to_noise(p->noise);
    c.seed = p->seed;
    c.threads = p->threads;
    const auto points = estimate_survival(c);
    Table fit_t = fit_table(fit_decay(points));
    if (survival) *survival = wrap(survival_table(points));
    if (fit) *fit = wrap(std::move(fit_t));
  });
}

/* ---- zne ---- */

void qs_zne_params_init(qs_zne_params* p) {
  if (!p) return;
  *p = {};
  p->n_qubits = 1;
  p->levels = kDefaultLevels;
  p->level_count = std::size(kDefaultLevels);
  p->shots_per_level = 10000;
  p->reference_variance = 0.01;
  p->methods = "richardson,linear,exponential";
}

qs_status qs_zne_run(const qs_zne_params* p, qs_table** levels, qs_table** extrapolation) {
  return guarded([&] {
    need(p, "params");
    need(p->circuit, "circuit");
    need(p->observable, "observable");
    NoiseScaledEnsemble e;
    e.base = parse_circuit(p->n_qubits, p->circuit);
    e.method = p->scaling == QS_ZNE_PARAMETER ? ScalingMethod::ParameterScaling : ScalingMethod::UnitaryFolding;
    e.levels = span_of(p->levels, p->level_count, "levels");
    e.shots_per_level = p->shots_per_level;
    e.reference_variance = p->reference_variance;
    e.noise = to_noise(p->noise);
    e.seed = p->seed;
    e.threads = p->threads;
    const std::vector<Pauli> obs = parse_pauli(p->observable);
    require(static_cast<int>(obs.size()) == p->n_qubits, "observable length must equal the qubit count");
    std::vector<ExtrapolationMethod> methods;
    for (const auto& m : split_list(p->methods)) methods.push_back(parse_extrapolation(m));
    require(!methods.empty(), "at least one extrapolation method is required");
    const auto est = collect(e, obs);
    std::vector<ExtrapolationResult> results;
    for (const auto& m : methods) results.push_back(extrapolate(est, m));
    if (levels) *levels = wrap(level_table(est));
    if (extrapolation) *extrapolation = wrap(extrapolation_table(results));
  });
}

qs_status qs_zne_extrapolate(const double* lambdas, const double* values, size_t count, const char* method,
                             double* e_zero, int* fell_back) {
  return guarded([&] {
    need(method, "method");
    need(e_zero, "e_zero");
    const auto r = extrapolate(span_of(lambdas, count, "lambdas"), span_of(values, count, "values"),
                               parse_extrapolation(method));
    *e_zero = r.e_zero;
    if (fell_back) *fell_back = r.fell_back ? 1 : 0;
  });
}

/* ---- sampling statistics ---- */

void qs_variance_params_init(qs_variance_params* p) {
  if (!p) return;
  *p = {};
  p->mu = 0.5;
  p->target = 0.01;
  p->sigma2s = kDefaultSigma2;
  p->sigma2_count = std::size(kDefaultSigma2);
  p->reuse = kDefaultReuse;
  p->reuse_count = std::size(kDefaultReuse);
}

qs_status qs_variance_run(const qs_variance_params* p, qs_table** out) {
  return guarded([&] {
    need(p, "params");
    need(out, "out");
    *out = wrap(samples_required_table(p->mu, p->target, span_of(p->sigma2s, p->sigma2_count, "sigma2s"),
                                       span_of(p->reuse, p->reuse_count, "reuse")));
  });
}

qs_status qs_var_scheme1(double mu, double sigma2, uint64_t k, uint64_t l, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = var_scheme1({mu, sigma2, k, l});
  });
}

qs_status qs_var_scheme2(double mu, double sigma2, uint64_t k, uint64_t l, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = var_scheme2({mu, sigma2, k, l});
  });
}

qs_status qs_samples_required(double mu, double sigma2, uint64_t l, double target, uint64_t max_circuits,
                              uint64_t* shots, int* feasible) {
  return guarded([&] {
    need(shots, "shots");
    std::optional<std::uint64_t> cap;
    if (max_circuits) cap = max_circuits;
    const auto r = samples_required(mu, sigma2, l, target, cap);
    *shots = r.shots;
    if (feasible) *feasible = r.feasible ? 1 : 0;
  });
}

/* ---- avqe ---- */

void qs_avqe_params_init(qs_avqe_params* p) {
  if (!p) return;
  const AqpeConfig c;
  *p = {};
  p->alpha = c.alpha;
  p->precision = c.precision;
  p->batch_size = c.batch_size;
  p->max_iterations = c.max_iterations;
  p->min_accept = c.min_accept;
  p->inflation = c.inflation;
  p->lattice_draws = c.lattice_draws ? 1 : 0;
  p->scale_to_batch_max = c.scale_to_batch_max ? 1 : 0;
  p->relative_moments = c.relative_moments ? 1 : 0;
  p->weighted_moments = c.weighted_moments ? 1 : 0;
  p->prior_mu = c.prior.mu;
  p->prior_sigma = c.prior.sigma;
  p->seed = c.seed;
}

qs_status qs_avqe_run(const qs_avqe_params* p, double phi, int sign, qs_avqe_result* result,
                      qs_table** history) {
  return guarded([&] {
    need(p, "params");
    need(result, "result");
    require(sign == 0 || sign == 1 || sign == -1, "sign must be -1, 0 or 1");
    require(std::isfinite(phi), "phi must be finite");
    AnalyticOracle oracle(phi, sign);
    const AqpeRun run = estimate_phase(to_config(*p), oracle);
    *result = {run.mu, run.sigma, run.iterations, run.converged ? 1 : 0, run.sign};
    if (history) *history = wrap(history_table(run));
  });
}

qs_status qs_avqe_energy(const qs_avqe_params* p, int n_qubits, const char* circuit, const char* hamiltonian,
                         double* energy, int* converged) {
  return guarded([&] {
    need(p, "params");
    need(circuit, "circuit");
    need(hamiltonian, "hamiltonian");
    need(energy, "energy");
    const auto r = estimate_energy(parse_hamiltonian(hamiltonian), parse_circuit(n_qubits, circuit), to_config(*p));
    *energy = r.energy;
    if (converged) *converged = r.converged ? 1 : 0;
  });
}

qs_status qs_n_measurements(double p, double alpha, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = n_measurements(p, alpha);
  });
}

qs_status qs_alpha_max(double p, double d, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = alpha_max(p, d);
  });
}

qs_status qs_n_min(double p, double d, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = n_min(p, d);
  });
}

qs_status qs_avqe_measurements(const qs_avqe_params* base, const double* ps, size_t p_count, const double* alphas,
                               size_t alpha_count, int runs, double phi, unsigned threads, qs_table** out) {
  return guarded([&] {
    need(base, "params");
    need(out, "out");
    require(runs >= 0, "runs must be >= 0");
    Table t({"alpha", "p", "n_formula", "n_empirical_median"});
    for (double p : span_of(ps, p_count, "ps"))
      for (double a : span_of(alphas, alpha_count, "alphas")) {
        const double formula = n_measurements(p, a);
        double empirical = std::numeric_limits<double>::quiet_NaN();
        if (runs > 0) {
          qs_avqe_params q = *base;
          q.alpha = a;
          q.precision = p;
          const auto rs = simulate_runs(to_config(q), phi, runs, threads);
          std::vector<double> its;
          for (const auto& r : rs) its.push_back(r.iterations);
          std::sort(its.begin(), its.end());
          const std::size_t n = its.size();
          empirical = n % 2 ? its[n / 2] : 0.5 * (its[n / 2 - 1] + its[n / 2]);
        }
        t.add_row({a, p, formula, empirical});
      }
    *out = wrap(std::move(t));
  });
}

qs_status qs_avqe_nmin(const double* ps, size_t p_count, const double* ds, size_t d_count, qs_table** out) {
  return guarded([&] {
    need(out, "out");
    Table t({"p", "d", "alpha_max", "n_min"});
    for (double p : span_of(ps, p_count, "ps"))
      for (double d : span_of(ds, d_count, "ds")) t.add_row({p, d, alpha_max(p, d), n_min(p, d)});
    *out = wrap(std::move(t));
  });
}

qs_status qs_avqe_gates(const qs_avqe_params* base, const double* alphas, size_t alpha_count, const int* prep_gates,
                        size_t prep_gates_count, int runs, double phi, unsigned threads, qs_table** out) {
  return guarded([&] {
    need(base, "params");
    need(out, "out");
    const auto terms = span_of(prep_gates, prep_gates_count, "prep_gates");
    require(!terms.empty(), "at least one n_P value is required");
    Table t({"alpha", "vqe_gates", "avqe_gates", "n_P"});
    for (double a : span_of(alphas, alpha_count, "alphas")) {
      qs_avqe_params q = *base;
      q.alpha = a;
      const auto counts = median_depth_counts(simulate_runs(to_config(q), phi, runs, threads));
      for (int n : terms) {
        const GateTotals g = gate_costs(q.precision, n, counts);
        t.add_row({a, g.vqe, g.avqe, double(n)});
      }
    }
    *out = wrap(std::move(t));
  });
}

/* ---- stack model ---- */

qs_status qs_bandwidth(double n_qubits, double utilisation, double bytes_per_gate, double gate_time, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = gate_stream_bandwidth({n_qubits, utilisation, bytes_per_gate, gate_time});
  });
}

qs_status qs_bandwidth_table(const double* gate_times, size_t gate_time_count, const double* qubits,
                             size_t qubit_count, double utilisation, double bytes_per_gate, qs_table** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(bandwidth_table(span_of(gate_times, gate_time_count, "gate_times"),
                                span_of(qubits, qubit_count, "qubits"), utilisation, bytes_per_gate));
  });
}

void qs_runtime_params_init(qs_runtime_params* p) {
  if (!p) return;
  *p = {};
  p->profiles = "superconducting,trapped_ion";
  p->latencies = kDefaultLatencies;
  p->latency_count = std::size(kDefaultLatencies);
  p->depths = kDefaultDepths;
  p->depth_count = std::size(kDefaultDepths);
  p->prep_gates = -1;
}

qs_status qs_runtime_table(const qs_runtime_params* p, qs_table** out) {
  return guarded([&] {
    need(p, "params");
    need(out, "out");
    std::vector<HardwareProfile> profiles;
    for (const auto& name : split_list(p->profiles)) profiles.push_back(profile_by_name(name));
    require(!profiles.empty(), "at least one profile is required");
    const CircuitModel model = p->prep_gates < 0 ? CircuitModel::depth_only() : CircuitModel::gate_count(p->prep_gates);
    *out = wrap(runtime_table(profiles, span_of(p->latencies, p->latency_count, "latencies"),
                              span_of(p->depths, p->depth_count, "depths"), model));
  });
}

void qs_utilization_params_init(qs_utilization_params* p) {
  if (!p) return;
  *p = {};
  p->profile = "superconducting";
  p->circuit_time = 2e-6;
  p->target_zeros = 1000;
  p->zero_probability = 0.5;
}

qs_status qs_utilization(const qs_utilization_params* p, qs_table** out) {
  return guarded([&] {
    need(p, "params");
    need(out, "out");
    need(p->profile, "profile");
    const HardwareProfile prof = profile_by_name(p->profile);
    const double closed = p->local_update ? 0.0 : while_loop_idle_fraction(prof, p->circuit_time);
    const WhileLoopResult sim = simulate_while_loop(prof, p->circuit_time, p->target_zeros, p->zero_probability,
                                                    p->seed, p->local_update != 0);
    Table t({"profile", "circuit_time_s", "idle_closed_form", "idle_simulated", "iterations", "wall_time_s"});
    t.add_row({prof.name, p->circuit_time, closed, 1.0 - sim.utilisation(), double(sim.iterations), sim.wall_time});
    *out = wrap(std::move(t));
  });
}

qs_status qs_backlog_table(const double* ratios, size_t ratio_count, const double* ks, size_t k_count,
                           double t_cycle, qs_table** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(backlog_table(span_of(ratios, ratio_count, "ratios"), span_of(ks, k_count, "ks"), t_cycle));
  });
}

qs_status qs_qec_bandwidth(double n_qubits, double op_rate_hz, double bytes_per_instruction, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = qec_instruction_bandwidth(n_qubits, op_rate_hz, bytes_per_instruction);
  });
}

/* ---- decoder ---- */

qs_status qs_decoder_create(int distance, int rounds, qs_decoder** out) {
  return guarded([&] {
    need(out, "out");
    *out = new qs_decoder{build_graph(distance, rounds)};
  });
}

void qs_decoder_free(qs_decoder* d) { delete d; }

size_t qs_decoder_vertex_count(const qs_decoder* d) { return d ? static_cast<size_t>(d->graph.vertex_count()) : 0; }
size_t qs_decoder_edge_count(const qs_decoder* d) { return d ? d->graph.edges.size() : 0; }

qs_status qs_decoder_sample(const qs_decoder* d, double p_data, double p_meas, uint64_t seed, int* hot,
                            size_t hot_capacity, size_t* hot_count, int* errors, size_t error_capacity,
                            size_t* error_count) {
  return guarded([&] {
    need(d, "decoder");
    const SyndromeHistory h = sample_errors(d->graph, p_data, p_meas, seed);
    copy_out(h.hot, hot, hot_capacity, hot_count, "hot");
    copy_out(h.error_edges, errors, error_capacity, error_count, "errors");
  });
}

qs_status qs_decoder_decode(const qs_decoder* d, const int* hot, size_t hot_count, int* correction, size_t capacity,
                            size_t* correction_count, uint64_t* work) {
  return guarded([&] {
    need(d, "decoder");
    std::vector<int> h = span_of(hot, hot_count, "hot");
    for (int v : h) require(v >= 0 && v < d->graph.boundary, "hot vertex out of range");
    std::sort(h.begin(), h.end());
    require(std::adjacent_find(h.begin(), h.end()) == h.end(), "hot vertices must be distinct");
    const DecodeResult r = decode(d->graph, h);
    copy_out(r.correction, correction, capacity, correction_count, "correction");
    if (work) *work = r.work;
  });
}

qs_status qs_decoder_syndrome(const qs_decoder* d, const int* edges, size_t edge_count, int* hot, size_t capacity,
                              size_t* hot_count) {
  return guarded([&] {
    need(d, "decoder");
    copy_out(syndrome_of(d->graph, edge_list(d->graph, edges, edge_count, "edges")), hot, capacity, hot_count, "hot");
  });
}

qs_status qs_decoder_logical_flip(const qs_decoder* d, const int* errors, size_t error_count, const int* correction,
                                  size_t correction_count, int* flipped) {
  return guarded([&] {
    need(d, "decoder");
    need(flipped, "flipped");
    ErrorLog log(d->graph);
    log.apply(edge_list(d->graph, errors, error_count, "errors"));
    log.apply(edge_list(d->graph, correction, correction_count, "correction"));
    *flipped = log.logical_flip() ? 1 : 0;
  });
}

qs_status qs_qec_decode_table(int distance, int rounds, double p_data, double p_meas, uint64_t shots, uint64_t seed,
                              qs_table** out) {
  return guarded([&] {
    need(out, "out");
    const DecodingGraph g = build_graph(distance, rounds);
    Table t({"shot", "n_hot", "correction_weight", "work", "syndrome_matches", "logical_failure"});
    for (std::uint64_t s = 0; s < shots; ++s) {
      Rng rng = Rng::stream(seed, {s});
      const SyndromeHistory h = sample_errors(g, p_data, p_meas, rng);
      const DecodeResult r = decode(g, h.hot);
      ErrorLog log(g);
      log.apply(h.error_edges);
      log.apply(r.correction);
      const bool matches = syndrome_of(g, r.correction) == h.hot;
      t.add_row({double(s), double(h.hot.size()), double(r.correction.size()), double(r.work),
                 matches ? 1.0 : 0.0, log.logical_flip() ? 1.0 : 0.0});
    }
    *out = wrap(std::move(t));
  });
}

qs_status qs_qec_logical_table(const int* distances, size_t distance_count, const double* ps, size_t p_count,
                               uint64_t shots, uint64_t seed, unsigned threads, qs_table** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(logical_rate_table(span_of(distances, distance_count, "distances"), span_of(ps, p_count, "ps"),
                                   shots, seed, threads));
  });
}

qs_status qs_qec_timeout(int distance, double p, int64_t work_budget, uint64_t shots, uint64_t seed,
                         unsigned threads, qs_table** out, qs_table** work) {
  return guarded([&] {
    std::optional<std::uint64_t> budget;
    if (work_budget >= 0) budget = static_cast<std::uint64_t>(work_budget);
    const TimeoutStats s = timeout_stats(distance, p, budget, shots, seed, threads);
    if (out) {
      Table t({"d", "p", "W_max", "p_toe", "inequality_holds"});
      t.add_row({double(distance), p, budget ? double(*budget) : std::numeric_limits<double>::infinity(), s.p_timeout,
                 s.inequality_holds ? 1.0 : 0.0});
      *out = wrap(std::move(t));
    }
    if (work) {
      Table t({"shot", "work_units"});
      for (std::size_t i = 0; i < s.work.size(); ++i) t.add_row({double(i), double(s.work[i])});
      *work = wrap(std::move(t));
    }
  });
}

qs_status qs_sqv(double n_logical, double p_logical, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = simple_quantum_volume(n_logical, p_logical);
  });
}

}  // extern "C"
