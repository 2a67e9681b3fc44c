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

#include "qstack/stack_model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "qstack/error.hpp"
#include "qstack/rng.hpp"

namespace qstack {

void HardwareProfile::validate() const {
  for (double v : {t_gate, t_meas, t_reset, t_lat_one_way, t_update})
    require(std::isfinite(v) && v >= 0.0, "profile times must be finite and >= 0");
}

HardwareProfile superconducting_profile() {
  return {"superconducting", 120e-9, 120e-9, 120e-9, 100e-6, 5e-6};
}

HardwareProfile trapped_ion_profile() {
  return {"trapped_ion", 10e-6, 750e-6, 750e-6, 100e-6, 5e-6};
}

std::vector<HardwareProfile> builtin_profiles() {
  return {superconducting_profile(), trapped_ion_profile()};
}

HardwareProfile profile_by_name(const std::string& name) {
  for (const auto& p : builtin_profiles())
    if (p.name == name) return p;
  throw ValidationError("unknown profile '" + name + "' (expected superconducting or trapped_ion)");
}

double while_loop_idle_fraction(const HardwareProfile& profile, double circuit_time) {
  profile.validate();
  require(std::isfinite(circuit_time) && circuit_time >= 0.0, "circuit_time must be >= 0");
  const double round_trip = 2.0 * profile.t_lat_one_way;
  if (round_trip == 0.0) return 0.0;
  return round_trip / (round_trip + circuit_time);
}

void BandwidthSpec::validate() const {
  require(std::isfinite(n_qubits) && n_qubits >= 0.0, "n_qubits must be >= 0");
  require(utilisation >= 0.0 && utilisation <= 1.0, "utilisation must be in [0, 1]");
  require(std::isfinite(bytes_per_gate) && bytes_per_gate >= 0.0, "bytes_per_gate must be >= 0");
  require(std::isfinite(t_gate) && t_gate > 0.0, "t_gate must be > 0");
}

double gate_stream_bandwidth(const BandwidthSpec& spec) {
  spec.validate();
  return spec.n_qubits * spec.utilisation * spec.bytes_per_gate / spec.t_gate;
}

double CircuitModel::gates(int m) const {
  if (kind == Kind::DepthOnly) return m;
  return 4.0 * m * (prep_gates + 1) + prep_gates + 3;
}

double aqpe_iteration_time(const HardwareProfile& profile, int m, const CircuitModel& model) {
  profile.validate();
  require(m >= 0, "M must be >= 0");
  return 2.0 * profile.t_lat_one_way + model.gates(m) * profile.t_gate +
         std::max(profile.t_reset, profile.t_meas) + profile.t_update;
}

double aqpe_total_time(const HardwareProfile& profile, const std::map<int, double>& depth_counts,
                       const CircuitModel& model) {
  double total = 0.0;
  for (const auto& [m, count] : depth_counts) total += count * aqpe_iteration_time(profile, m, model);
  return total;
}

void BacklogSpec::validate() const {
  require(generation_rate > 0.0 && processing_rate > 0.0, "rates must be > 0");
  require(std::isfinite(k) && k >= 0.0, "k must be >= 0");
  require(std::isfinite(t_cycle) && t_cycle > 0.0, "t_cycle must be > 0");
}

BacklogTime backlog_execution_time(double f, double k, double t_cycle) {
  require(std::isfinite(f) && f > 0.0, "backlog ratio f must be > 0");
  require(std::isfinite(k) && k >= 0.0, "k must be >= 0");
  require(std::isfinite(t_cycle) && t_cycle > 0.0, "t_cycle must be > 0");
  BacklogTime out;
  out.log10_seconds = std::log10(t_cycle) + k * std::log10(f);
  out.seconds = t_cycle * std::pow(f, k);
  return out;
}

BacklogTime backlog_execution_time(const BacklogSpec& spec) {
  spec.validate();
  return backlog_execution_time(spec.ratio(), spec.k, spec.t_cycle);
}

double qec_instruction_bandwidth(double n_qubits, double op_rate_hz, double bytes_per_instruction) {
  for (double v : {n_qubits, op_rate_hz, bytes_per_instruction})
    require(std::isfinite(v) && v >= 0.0, "bandwidth inputs must be >= 0");
  return n_qubits * op_rate_hz * bytes_per_instruction;
}

WhileLoopResult simulate_while_loop(const HardwareProfile& profile, double circuit_time,
                                    std::uint64_t target_zeros, double zero_probability,
                                    std::uint64_t seed, bool local_update) {
  profile.validate();
  require(std::isfinite(circuit_time) && circuit_time > 0.0, "circuit_time must be > 0");
  require(zero_probability > 0.0 && zero_probability <= 1.0, "zero probability must be in (0, 1]");
  enum class Kind { CircuitDone, DecisionArrived };
  struct Event {
    double time;
    std::uint64_t order;
    Kind kind;
    bool operator>(const Event& o) const { return time != o.time ? time > o.time : order > o.order; }
  };
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;
  Rng rng(seed);
  const double round_trip = local_update ? 0.0 : 2.0 * profile.t_lat_one_way;
  WhileLoopResult out;
  std::uint64_t order = 0;
  if (target_zeros == 0) return out;
  queue.push({circuit_time, order++, Kind::CircuitDone});
  out.busy_time += circuit_time;
  ++out.iterations;
  while (!queue.empty()) {
    const Event e = queue.top();
    queue.pop();
    out.wall_time = e.time;
    if (e.kind == Kind::CircuitDone) {
      if (rng.uniform() < zero_probability) ++out.zeros;
      // The outcome travels to the host and the verdict comes back.
      queue.push({e.time + round_trip, order++, Kind::DecisionArrived});
    } else if (out.zeros < target_zeros) {
      queue.push({e.time + circuit_time, order++, Kind::CircuitDone});
      out.busy_time += circuit_time;
      ++out.iterations;
    }
  }
  return out;
}

Table bandwidth_table(const std::vector<double>& gate_times, const std::vector<double>& qubit_counts,
                      double utilisation, double bytes_per_gate) {
  Table t({"gate_time_s", "n_qubits", "bandwidth_Bps"});
  for (double tg : gate_times)
    for (double n : qubit_counts)
      t.add_row({tg, n, gate_stream_bandwidth({n, utilisation, bytes_per_gate, tg})});
  return t;
}

Table runtime_table(const std::vector<HardwareProfile>& profiles, const std::vector<double>& latencies,
                    const std::vector<int>& depths, const CircuitModel& model) {
  Table t({"latency_s", "M", "T_s", "profile"});
  for (const auto& base : profiles)
    for (double lat : latencies)
      for (int m : depths) {
        HardwareProfile p = base;
        p.t_lat_one_way = lat;
        t.add_row({lat, double(m), aqpe_iteration_time(p, m, model), p.name});
      }
  return t;
}

Table backlog_table(const std::vector<double>& ratios, const std::vector<double>& ks, double t_cycle) {
  Table t({"f", "k", "log10_seconds"});
  for (double f : ratios)
    for (double k : ks) t.add_row({f, k, backlog_execution_time(f, k, t_cycle).log10_seconds});
  return t;
}

}  // namespace qstack
