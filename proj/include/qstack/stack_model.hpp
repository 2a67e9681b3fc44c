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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qstack/table.hpp"

namespace qstack {

/// Timing constants of a control stack, all in seconds.
struct HardwareProfile {
  std::string name;
  double t_gate = 0.0;
  double t_meas = 0.0;
  double t_reset = 0.0;
  double t_lat_one_way = 0.0;
  double t_update = 0.0;  // classical Bayesian update

  void validate() const;
};

HardwareProfile superconducting_profile();
HardwareProfile trapped_ion_profile();
std::vector<HardwareProfile> builtin_profiles();
/// Looks up "superconducting" or "trapped_ion".
HardwareProfile profile_by_name(const std::string& name);

/// Fraction of wall time the qubits sit idle waiting on a round trip.
double while_loop_idle_fraction(const HardwareProfile& profile, double circuit_time);

struct BandwidthSpec {
  double n_qubits = 0.0;
  double utilisation = 1.0;
  double bytes_per_gate = 2.0;  // 4 for two-qubit gates
  double t_gate = 120e-9;

  void validate() const;
};

double gate_stream_bandwidth(const BandwidthSpec& spec);

struct CircuitModel {
  enum class Kind { DepthOnly, GateCount } kind = Kind::DepthOnly;
  int prep_gates = 0;  // state-preparation gates, GateCount only

  static CircuitModel depth_only() { return {}; }
  static CircuitModel gate_count(int prep_gates) { return {Kind::GateCount, prep_gates}; }
  double gates(int m) const;
};

/// Wall time of one adaptive phase-estimation round at depth M.
double aqpe_iteration_time(const HardwareProfile& profile, int m, const CircuitModel& model);
double aqpe_total_time(const HardwareProfile& profile, const std::map<int, double>& depth_counts,
                       const CircuitModel& model);

struct BacklogSpec {
  double generation_rate = 1.0;  // syndromes per second
  double processing_rate = 1.0;
  double k = 0.0;                // non-Clifford gate count
  double t_cycle = 400e-9;

  double ratio() const { return generation_rate / processing_rate; }
  void validate() const;
};

struct BacklogTime {
  double seconds = 0.0;  // inf when it overflows
  double log10_seconds = 0.0;
};

BacklogTime backlog_execution_time(const BacklogSpec& spec);
BacklogTime backlog_execution_time(double f, double k, double t_cycle);

double qec_instruction_bandwidth(double n_qubits, double op_rate_hz, double bytes_per_instruction);

struct WhileLoopResult {
  std::uint64_t iterations = 0;
  std::uint64_t zeros = 0;
  double wall_time = 0.0;
  double busy_time = 0.0;
  double utilisation() const { return wall_time > 0 ? busy_time / wall_time : 0.0; }
};

/// Event simulation of a host loop that reruns a circuit until it has seen
/// `target_zeros` zero outcomes. Each outcome is zero with probability
/// `zero_probability`. With `local_update` the decision is made next to the
/// qubits and no round trip is paid.
WhileLoopResult simulate_while_loop(const HardwareProfile& profile, double circuit_time,
                                    std::uint64_t target_zeros, double zero_probability,
                                    std::uint64_t seed, bool local_update = false);

Table bandwidth_table(const std::vector<double>& gate_times, const std::vector<double>& qubit_counts,
                      double utilisation, double bytes_per_gate);
Table runtime_table(const std::vector<HardwareProfile>& profiles, const std::vector<double>& latencies,
                    const std::vector<int>& depths, const CircuitModel& model);
Table backlog_table(const std::vector<double>& ratios, const std::vector<double>& ks, double t_cycle);

}  // namespace qstack
