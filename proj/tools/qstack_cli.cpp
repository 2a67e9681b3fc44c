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

// Command-line harness over the qstack C API. Every subcommand writes CSV
// (stdout or --out) plus a key=value run manifest.

#include <cerrno>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qstack/qstack.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInternal = 2;

const char* kSymbolTable =
    "Flag / symbol mapping:\n"
    "  --alpha            alpha, depth schedule exponent M = sigma^-alpha\n"
    "  --precision        p, target posterior standard deviation\n"
    "  --batch-size       k, rejection-filter candidates per update\n"
    "  --prep-gates       n_P, gates in the state-preparation circuit\n"
    "  --distance         d, surface-code distance\n"
    "  --depths           m, RB sequence lengths\n"
    "  --levels           lambda, noise scale factors\n"
    "  --sigma2           sigma^2, circuit-to-circuit variance of P\n"
    "  --reuse            l, shots per sampled circuit\n"
    "  --mu               mu, mean success probability\n"
    "  --ratio            f, syndrome generation / processing rate\n"
    "  --k                k, non-Clifford gate count\n"
    "  --cycle-time       t_cycle, seconds\n"
    "  --latency          t_lat, one-way CPU-QPU latency, seconds\n"
    "  --work-budget      W_max, decoder work units (-1 = unlimited)\n";

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(qs_status s) {
  if (s == QS_OK) return;
  if (s == QS_ERR_VALIDATION) throw ValidationFailure(qs_last_error());
  throw InternalFailure(qs_last_error());
}

struct TableHandle {
  qs_table* t = nullptr;
  TableHandle() = default;
  TableHandle(TableHandle&& o) noexcept : t(o.t) { o.t = nullptr; }
  TableHandle(const TableHandle&) = delete;
  TableHandle& operator=(const TableHandle&) = delete;
  ~TableHandle() { qs_table_free(t); }
  qs_table** out() { return &t; }
};

std::string render(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string render(int v) { return std::to_string(v); }
std::string render(unsigned v) { return std::to_string(v); }
std::string render(std::int64_t v) { return std::to_string(v); }
std::string render(std::uint64_t v) { return std::to_string(v); }
std::string render(const std::string& v) { return v; }

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    char* end = nullptr;
    errno = 0;
    T v{};
    if constexpr (std::is_floating_point_v<T>) {
      v = std::strtod(item.c_str(), &end);
    } else if constexpr (std::is_signed_v<T>) {
      v = static_cast<T>(std::strtoll(item.c_str(), &end, 10));
    } else {
      if (item[0] == '-') throw ValidationFailure(std::string(flag) + ": '" + item + "' must be non-negative");
      v = static_cast<T>(std::strtoull(item.c_str(), &end, 10));
    }
    if (errno || end != item.c_str() + item.size())
      throw ValidationFailure(std::string(flag) + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationFailure(std::string(flag) + " must list at least one value");
  return out;
}

struct Common {
  std::uint64_t seed = 0;
  std::string out = "-";
  unsigned threads = 0;
  std::string config;
};

struct Command {
  CLI::App* app = nullptr;
  Common common;
  std::vector<std::pair<std::string, std::function<std::string()>>> params;
  std::function<void(Command&)> run;
  std::vector<std::string> outputs;

  template <typename T>
  CLI::Option* option(const std::string& name, T& var, const std::string& help) {
    params.emplace_back(name, [&var] { return render(var); });
    return app->add_option("--" + name, var, help)->capture_default_str();
  }

  std::string secondary_path(const std::string& tag) const {
    const std::string& o = common.out;
    if (o == "-") return "-";
    const auto dot = o.rfind(".csv");
    if (dot != std::string::npos && dot + 4 == o.size()) return o.substr(0, dot) + "." + tag + ".csv";
    return o + "." + tag + ".csv";
  }

  // Writes `table` to `path`; on stdout a blank line separates tables.
  void emit(TableHandle& table, const std::string& path) {
    if (path == "-" && !outputs.empty()) std::fputs("\n", stdout);
    check(qs_table_write_csv(table.t, path == "-" ? nullptr : path.c_str()));
    outputs.push_back(path == "-" ? "stdout" : path);
  }

  void emit(TableHandle& table) { emit(table, common.out); }

  std::string manifest() const {
    std::string m = "subcommand=" + app->get_name() + "\n";
    m += "version=" + std::string(qs_version()) + "\n";
    m += "seed=" + render(common.seed) + "\n";
    m += "threads=" + render(common.threads) + "\n";
    std::string outs;
    for (const auto& o : outputs) outs += (outs.empty() ? "" : ",") + o;
    m += "outputs=" + outs + "\n";
    for (const auto& [name, value] : params) m += name + "=" + value() + "\n";
    return m;
  }
};

void add_common(Command& c) {
  c.app->add_option("--seed", c.common.seed, "master seed")->capture_default_str();
  c.app->add_option("--out", c.common.out, "CSV path, - for stdout")->capture_default_str();
  c.app->add_option("--threads", c.common.threads, "worker threads, 0 = all cores")->capture_default_str();
  c.app->add_option("--config", c.common.config, "key=value file; flags override it");
}

// Reads key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationFailure("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int n = 0;
  while (std::getline(f, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationFailure(path + ":" + std::to_string(n) + ": expected key=value");
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string value = line.substr(eq + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    out[key] = value;
  }
  return out;
}

// Config entries become flags placed after the subcommand name and before the
// user's own, skipping any key the user set explicitly.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const CLI::App& sub) {
  std::string config_path;
  std::set<std::string> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const auto eq = a.find('=');
    const std::string name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
    given.insert(name);
    if (name == "config") config_path = eq == std::string::npos ? (i + 1 < args.size() ? args[i + 1] : "") : a.substr(eq + 1);
  }
  if (config_path.empty()) return args;
  static const std::set<std::string> kManifestOnly = {"subcommand", "version", "outputs"};
  std::vector<std::string> merged{args[0], args[1]};
  for (const auto& [key, value] : read_config(config_path)) {
    if (kManifestOnly.count(key) || given.count(key)) continue;
    if (key == "config" || !sub.get_option_no_throw("--" + key))
      throw ValidationFailure("config file: unknown key '" + key + "' for " + sub.get_name());
    merged.push_back("--" + key + "=" + value);
  }
  merged.insert(merged.end(), args.begin() + 2, args.end());
  return merged;
}

TableHandle numeric_table(std::initializer_list<const char*> columns) {
  std::vector<const char*> names(columns);
  TableHandle t;
  check(qs_table_create(names.data(), names.size(), t.out()));
  return t;
}

void add_row(TableHandle& t, std::initializer_list<double> values) {
  std::vector<double> v(values);
  check(qs_table_add_row(t.t, v.data(), v.size()));
}

qs_noise noise(double dep, double flip) { return qs_noise{dep, flip}; }

// ---- subcommands ---------------------------------------------------------

void add_rb(CLI::App& root, std::vector<std::unique_ptr<Command>>& cmds) {
  auto c = std::make_unique<Command>();
  c->app = root.add_subcommand("rb", "randomised benchmarking decay (survival CSV; fit CSV at <out>.fit.csv)");
  struct P {
    int qubits = 1;
    std::string depths = "1,2,5,10,20,50,100";
    int sequences = 50;
    int reuse = 1;
    double depolarizing = 0.01;
    double readout_flip = 0.0;
  };
  auto p = std::make_shared<P>();
  c->option("qubits", p->qubits, "register size (1 or 2)");
  c->option("depths", p->depths, "sequence lengths m, comma list");
  c->option("sequences", p->sequences, "random sequences per depth");
  c->option("reuse", p->reuse, "shots per sequence");
  c->option("depolarizing", p->depolarizing, "per-gate depolarizing probability");
  c->option("readout-flip", p->readout_flip, "readout bit-flip probability");
  c->run = [p](Command& c) {
    const auto depths = parse_list<int>(p->depths, "--depths");
    qs_rb_params rp;
    qs_rb_params_init(&rp);
    rp.n_qubits = p->qubits;
    rp.depths = depths.data();
    rp.depth_count = depths.size();
    rp.sequences_per_depth = p->sequences;
    rp.reuse_factor = p->reuse;
    rp.noise = noise(p->depolarizing, p->readout_flip);
    rp.seed = c.common.seed;
    rp.threads = c.common.threads;
    TableHandle survival, fit;
    check(qs_rb_run(&rp, survival.out(), fit.out()));
    c.emit(survival);
    c.emit(fit, c.secondary_path("fit"));
  };
  cmds.push_back(std::move(c));
}

void add_zne(CLI::App& root, std::vector<std::unique_ptr<Command>>& cmds) {
  auto c = std::make_unique<Command>();
  c->app = root.add_subcommand("zne", "zero-noise extrapolation (levels CSV; fits at <out>.extrapolation.csv)");
  struct P {
    int qubits = 1;
    std::string circuit = "h 0; rz 0.4 0; h 0; rx 0.3 0";
    std::string observable = "Z";
    std::string scaling = "folding";
    std::string levels = "1,1.5,2,3,5";
    int shots = 10000;
    double reference_variance = 0.01;
    std::string methods = "richardson,linear,exponential";
    double depolarizing = 0.01;
    double readout_flip = 0.0;
  };
  auto p = std::make_shared<P>();
  c->option("qubits", p->qubits, "register size");
  c->option("circuit", p->circuit, "circuit text, e.g. \"h 0; cx 0 1; rz 0.3 1\"");
  c->option("observable", p->observable, "Pauli string, qubit 0 first");
  c->option("scaling", p->scaling, "folding or parameter")->check(CLI::IsMember({"folding", "parameter"}));
  c->option("levels", p->levels, "noise scale factors lambda, comma list");
  c->option("shots", p->shots, "shots per level");
  c->option("reference-variance", p->reference_variance, "sigma_0^2 for parameter scaling");
  c->option("methods", p->methods, "richardson, linear, polyK, exponential");
  c->option("depolarizing", p->depolarizing, "per-gate depolarizing probability");
  c->option("readout-flip", p->readout_flip, "readout bit-flip probability");
  c->run = [p](Command& c) {
    const auto levels = parse_list<double>(p->levels, "--levels");
    qs_zne_params zp;
    qs_zne_params_init(&zp);
    zp.n_qubits = p->qubits;
    zp.circuit = p->circuit.c_str();
    zp.observable = p->observable.c_str();
    zp.scaling = p->scaling == "parameter" ? QS_ZNE_PARAMETER : QS_ZNE_FOLDING;
    zp.levels = levels.data();
    zp.level_count = levels.size();
    zp.shots_per_level = p->shots;
    zp.reference_variance = p->reference_variance;
    zp.methods = p->methods.c_str();
    zp.noise = noise(p->depolarizing, p->readout_flip);
    zp.seed = c.common.seed;
    zp.threads = c.common.threads;
    TableHandle lv, ex;
    check(qs_zne_run(&zp, lv.out(), ex.out()));
    c.emit(lv);
    c.emit(ex, c.secondary_path("extrapolation"));
  };
  cmds.push_back(std::move(c));
}

void add_variance(CLI::App& root, std::vector<std::unique_ptr<Command>>& cmds) {
  auto c = std::make_unique<Command>();
  c->app = root.add_subcommand("variance", "samples needed versus sigma^2 and reuse l");
  struct P {
    double mu = 0.5;
    double target = 0.01;
    std::string sigma2 = "0,0.01,0.05,0.1";
    std::string reuse = "1,2,5,10";
  };
  auto p = std::make_shared<P>();
  c->option("mu", p->mu, "mean success probability");
  c->option("target", p->target, "target standard deviation of the mean");
  c->option("sigma2", p->sigma2, "circuit variance values, comma list");
  c->option("reuse", p->reuse, "shots per circuit l, comma list");
  c->run = [p](Command& c) {
    const auto s2 = parse_list<double>(p->sigma2, "--sigma2");
    const auto l = parse_list<std::uint64_t>(p->reuse, "--reuse");
    qs_variance_params vp;
    qs_variance_params_init(&vp);
    vp.mu = p->mu;
    vp.target = p->target;
    vp.sigma2s = s2.data();
    vp.sigma2_count = s2.size();
    vp.reuse = l.data();
    vp.reuse_count = l.size();
    TableHandle t;
    check(qs_variance_run(&vp, t.out()));
    c.emit(t);
  };
  cmds.push_back(std::move(c));
}

// Filter knobs shared by the avqe subcommands.
struct FilterFlags {
  int batch_size = 1000;
  int max_iterations = 1000000;
  int min_accept = 10;
  double inflation = 1.5;
  int lattice = 1;
  int scale_to_max = 1;
  int relative_moments = 1;
  int weighted_moments = 1;
  double prior_mu = 0.0;
  double prior_sigma = 1.5707963267948966;

  void add(Command& c) {
    c.option("batch-size", batch_size, "k, candidates per update");
    c.option("max-iterations", max_iterations, "iteration cap");
    c.option("min-accept", min_accept, "accepted candidates needed before retrying");
    c.option("inflation", inflation, "sigma inflation on starvation");
    c.option("lattice", lattice, "1: shifted-lattice candidates, 0: independent draws");
    c.option("scale-to-max", scale_to_max, "1: accept with P / batch maximum, 0: with P");
    c.option("relative-moments", relative_moments, "1: posterior moments relative to the batch");
    c.option("weighted-moments", weighted_moments, "1: weight candidates by likelihood");
    c.option("prior-mu", prior_mu, "prior mean");
    c.option("prior-sigma", prior_sigma, "prior standard deviation");
  }

  qs_avqe_params params(std::uint64_t seed) const {
    qs_avqe_params a;
    qs_avqe_params_init(&a);
    a.batch_size = batch_size;
    a.max_iterations = max_iterations;
    a.min_accept = min_accept;
    a.inflation = inflation;
    a.lattice_draws = lattice;
    a.scale_to_batch_max = scale_to_max;
    a.relative_moments = relative_moments;
    a.weighted_moments = weighted_moments;
    a.prior_mu = prior_mu;
    a.prior_sigma = prior_sigma;
    a.seed = seed;
    return a;
  }
};

void add_avqe(CLI::App& root, std::vector<std::unique_ptr<Command>>& cmds) {
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("avqe-measurements", "measurement count N(p, alpha): formula and simulated medians");
    struct P {
      std::string precision = "0.1,0.05,0.01";
      std::string alpha = "0,0.25,0.5,0.75,1";
      int runs = 0;
      double phi = 0.5;
      FilterFlags f;
    };
    auto p = std::make_shared<P>();
    c->option("precision", p->precision, "p values, comma list");
    c->option("alpha", p->alpha, "alpha values, comma list");
    c->option("runs", p->runs, "simulated runs per cell (0 = formula only)");
    c->option("phi", p->phi, "true phase for simulated runs");
    p->f.add(*c);
    c->run = [p](Command& c) {
      const auto ps = parse_list<double>(p->precision, "--precision");
      const auto as = parse_list<double>(p->alpha, "--alpha");
      const qs_avqe_params base = p->f.params(c.common.seed);
      TableHandle t;
      check(qs_avqe_measurements(&base, ps.data(), ps.size(), as.data(), as.size(), p->runs, p->phi,
                                 c.common.threads, t.out()));
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("avqe-nmin", "minimum measurements under a depth limit d");
    struct P {
      std::string precision = "0.1,0.01,0.001";
      std::string depth_limit = "1,10,100,1000";
    };
    auto p = std::make_shared<P>();
    c->option("precision", p->precision, "p values, comma list");
    c->option("depth-limit", p->depth_limit, "maximum circuit depth d, comma list");
    c->run = [p](Command& c) {
      const auto ps = parse_list<double>(p->precision, "--precision");
      const auto ds = parse_list<double>(p->depth_limit, "--depth-limit");
      TableHandle t;
      check(qs_avqe_nmin(ps.data(), ps.size(), ds.data(), ds.size(), t.out()));
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("avqe-gates", "VQE versus AVQE gate totals from simulated depth counts");
    struct P {
      double precision = 1e-3;
      std::string alpha = "0.1,0.2,0.3,0.4,0.5";
      std::string prep_gates = "10,1000";
      int runs = 25;
      double phi = 0.5;
      FilterFlags f;
    };
    auto p = std::make_shared<P>();
    c->option("precision", p->precision, "p");
    c->option("alpha", p->alpha, "alpha values, comma list");
    c->option("prep-gates", p->prep_gates, "n_P values, comma list");
    c->option("runs", p->runs, "seeds per alpha; depth counts are per-depth medians");
    c->option("phi", p->phi, "true phase");
    p->f.add(*c);
    c->run = [p](Command& c) {
      const auto as = parse_list<double>(p->alpha, "--alpha");
      const auto ns = parse_list<int>(p->prep_gates, "--prep-gates");
      qs_avqe_params base = p->f.params(c.common.seed);
      base.precision = p->precision;
      TableHandle t;
      check(qs_avqe_gates(&base, as.data(), as.size(), ns.data(), ns.size(), p->runs, p->phi, c.common.threads,
                          t.out()));
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("avqe-run", "single phase-estimation trace (history CSV; result at <out>.result.csv)");
    struct P {
      double alpha = 0.5;
      double precision = 0.01;
      double phi = 0.5;
      int sign = 0;
      FilterFlags f;
    };
    auto p = std::make_shared<P>();
    c->option("alpha", p->alpha, "alpha");
    c->option("precision", p->precision, "p");
    c->option("phi", p->phi, "true phase");
    c->option("sign", p->sign, "collapse sign: 1, -1, or 0 to draw it");
    p->f.add(*c);
    c->run = [p](Command& c) {
      qs_avqe_params a = p->f.params(c.common.seed);
      a.alpha = p->alpha;
      a.precision = p->precision;
      qs_avqe_result r;
      TableHandle history;
      check(qs_avqe_run(&a, p->phi, p->sign, &r, history.out()));
      c.emit(history);
      TableHandle result = numeric_table({"mu", "sigma", "iterations", "converged", "sign"});
      add_row(result, {r.mu, r.sigma, double(r.iterations), double(r.converged), double(r.sign)});
      c.emit(result, c.secondary_path("result"));
    };
    cmds.push_back(std::move(c));
  }
}

void add_stack(CLI::App& root, std::vector<std::unique_ptr<Command>>& cmds) {
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("runtime", "AQPE iteration wall time versus latency and depth");
    struct P {
      std::string profiles = "superconducting,trapped_ion";
      std::string latency = "1e-6,1e-5,1e-4";
      std::string depths = "1,2,5,10,20,50,100";
      int prep_gates = -1;
    };
    auto p = std::make_shared<P>();
    c->option("profiles", p->profiles, "superconducting, trapped_ion");
    c->option("latency", p->latency, "one-way latency in seconds, comma list");
    c->option("depths", p->depths, "M values, comma list");
    c->option("prep-gates", p->prep_gates, "n_P for gate counting; -1 counts M gates");
    c->run = [p](Command& c) {
      const auto lat = parse_list<double>(p->latency, "--latency");
      const auto ms = parse_list<int>(p->depths, "--depths");
      qs_runtime_params rp;
      qs_runtime_params_init(&rp);
      rp.profiles = p->profiles.c_str();
      rp.latencies = lat.data();
      rp.latency_count = lat.size();
      rp.depths = ms.data();
      rp.depth_count = ms.size();
      rp.prep_gates = p->prep_gates;
      TableHandle t;
      check(qs_runtime_table(&rp, t.out()));
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("bandwidth", "host-to-QPU gate stream bandwidth");
    struct P {
      std::string qubits = "150";
      std::string gate_time = "120e-9";
      double utilisation = 0.5;
      double bytes_per_gate = 2.0;
    };
    auto p = std::make_shared<P>();
    c->option("qubits", p->qubits, "qubit counts, comma list");
    c->option("gate-time", p->gate_time, "gate times in seconds, comma list");
    c->option("utilisation", p->utilisation, "fraction of qubits busy per gate slot");
    c->option("bytes-per-gate", p->bytes_per_gate, "instruction bytes per gate");
    c->run = [p](Command& c) {
      const auto tg = parse_list<double>(p->gate_time, "--gate-time");
      const auto nq = parse_list<double>(p->qubits, "--qubits");
      TableHandle t;
      check(qs_bandwidth_table(tg.data(), tg.size(), nq.data(), nq.size(), p->utilisation, p->bytes_per_gate,
                               t.out()));
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("utilization", "idle fraction of a host-driven while loop");
    qs_utilization_params defaults;
    qs_utilization_params_init(&defaults);
    struct P {
      std::string profile;
      double circuit_time = 0;
      std::uint64_t zeros = 0;
      double zero_probability = 0;
      int local = 0;
    };
    auto p = std::make_shared<P>(P{defaults.profile, defaults.circuit_time, defaults.target_zeros,
                                   defaults.zero_probability, defaults.local_update});
    c->option("profile", p->profile, "superconducting or trapped_ion");
    c->option("circuit-time", p->circuit_time, "circuit duration in seconds");
    c->option("zeros", p->zeros, "zero outcomes the loop waits for");
    c->option("zero-probability", p->zero_probability, "probability an outcome is zero");
    c->option("local", p->local, "1: decide next to the qubits (no round trip)");
    c->run = [p](Command& c) {
      qs_utilization_params up;
      qs_utilization_params_init(&up);
      up.profile = p->profile.c_str();
      up.circuit_time = p->circuit_time;
      up.target_zeros = p->zeros;
      up.zero_probability = p->zero_probability;
      up.local_update = p->local;
      up.seed = c.common.seed;
      TableHandle t;
      check(qs_utilization(&up, t.out()));
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("backlog", "decoder backlog execution time t_cycle * f^k");
    struct P {
      std::string ratio = "1,1.01,1.1,2";
      std::string k = "686";
      double cycle_time = 400e-9;
    };
    auto p = std::make_shared<P>();
    c->option("ratio", p->ratio, "f values, comma list");
    c->option("k", p->k, "non-Clifford gate counts, comma list");
    c->option("cycle-time", p->cycle_time, "t_cycle in seconds");
    c->run = [p](Command& c) {
      const auto fs = parse_list<double>(p->ratio, "--ratio");
      const auto ks = parse_list<double>(p->k, "--k");
      TableHandle t;
      check(qs_backlog_table(fs.data(), fs.size(), ks.data(), ks.size(), p->cycle_time, t.out()));
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("qec-bandwidth", "error-correction instruction bandwidth");
    struct P {
      std::string qubits = "1,100000";
      double op_rate = 100e6;
      double bytes = 1.0;
    };
    auto p = std::make_shared<P>();
    c->option("qubits", p->qubits, "physical qubit counts, comma list");
    c->option("op-rate", p->op_rate, "operations per second per qubit");
    c->option("bytes", p->bytes, "bytes per instruction");
    c->run = [p](Command& c) {
      const auto nq = parse_list<double>(p->qubits, "--qubits");
      TableHandle t = numeric_table({"n_qubits", "op_rate_hz", "bytes_per_instruction", "bandwidth_Bps"});
      for (double n : nq) {
        double bw = 0;
        check(qs_qec_bandwidth(n, p->op_rate, p->bytes, &bw));
        add_row(t, {n, p->op_rate, p->bytes, bw});
      }
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
}

void add_qec(CLI::App& root, std::vector<std::unique_ptr<Command>>& cmds) {
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("qec-decode", "per-shot Union-Find decoding under phenomenological noise");
    struct P {
      int distance = 3;
      int rounds = 0;
      double p = 0.01;
      double p_meas = -1.0;
      std::uint64_t shots = 100;
    };
    auto p = std::make_shared<P>();
    c->option("distance", p->distance, "code distance d");
    c->option("rounds", p->rounds, "syndrome rounds (0 = d)");
    c->option("p", p->p, "data-qubit flip probability per round");
    c->option("p-meas", p->p_meas, "syndrome misread probability (-1 = same as --p)");
    c->option("shots", p->shots, "decoded instances");
    c->run = [p](Command& c) {
      const int rounds = p->rounds == 0 ? p->distance : p->rounds;
      const double pm = p->p_meas < 0 ? p->p : p->p_meas;
      TableHandle t;
      check(qs_qec_decode_table(p->distance, rounds, p->p, pm, p->shots, c.common.seed, t.out()));
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("qec-logical", "logical failure rate over d rounds");
    struct P {
      std::string distance = "3,5";
      std::string p = "0.005,0.01,0.02";
      std::uint64_t shots = 10000;
    };
    auto p = std::make_shared<P>();
    c->option("distance", p->distance, "code distances, comma list");
    c->option("p", p->p, "physical error rates, comma list");
    c->option("shots", p->shots, "Monte Carlo shots per cell");
    c->run = [p](Command& c) {
      const auto ds = parse_list<int>(p->distance, "--distance");
      const auto ps = parse_list<double>(p->p, "--p");
      TableHandle t;
      check(qs_qec_logical_table(ds.data(), ds.size(), ps.data(), ps.size(), p->shots, c.common.seed,
                                 c.common.threads, t.out()));
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("qec-timeout", "decoder timeout rate under a work budget (work dump via --work-out)");
    struct P {
      int distance = 3;
      double p = 0.01;
      std::int64_t work_budget = -1;
      std::uint64_t shots = 10000;
      std::string work_out;
    };
    auto p = std::make_shared<P>();
    c->option("distance", p->distance, "code distance d");
    c->option("p", p->p, "physical error rate");
    c->option("work-budget", p->work_budget, "W_max in work units (-1 = unlimited)");
    c->option("shots", p->shots, "Monte Carlo shots");
    c->option("work-out", p->work_out, "optional CSV of per-shot work units");
    c->run = [p](Command& c) {
      TableHandle t, work;
      check(qs_qec_timeout(p->distance, p->p, p->work_budget, p->shots, c.common.seed, c.common.threads, t.out(),
                           p->work_out.empty() ? nullptr : work.out()));
      c.emit(t);
      if (!p->work_out.empty()) c.emit(work, p->work_out);
    };
    cmds.push_back(std::move(c));
  }
  {
    auto c = std::make_unique<Command>();
    c->app = root.add_subcommand("sqv", "simple quantum volume n_L * floor(1 / p_L)");
    struct P {
      std::string logical_qubits = "100";
      std::string p_logical = "1e-6";
    };
    auto p = std::make_shared<P>();
    c->option("logical-qubits", p->logical_qubits, "logical qubit counts, comma list");
    c->option("p-logical", p->p_logical, "logical error rates per gate, comma list");
    c->run = [p](Command& c) {
      const auto ns = parse_list<double>(p->logical_qubits, "--logical-qubits");
      const auto ps = parse_list<double>(p->p_logical, "--p-logical");
      TableHandle t = numeric_table({"n_logical", "p_logical", "sqv"});
      for (double n : ns)
        for (double pl : ps) {
          double v = 0;
          check(qs_sqv(n, pl, &v));
          add_row(t, {n, pl, v});
        }
      c.emit(t);
    };
    cmds.push_back(std::move(c));
  }
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"qstack: seeded CPU-QPU stack experiments with CSV output"};
  app.footer(kSymbolTable);
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> cmds;
  add_rb(app, cmds);
  add_zne(app, cmds);
  add_variance(app, cmds);
  add_avqe(app, cmds);
  add_stack(app, cmds);
  add_qec(app, cmds);
  for (auto& c : cmds) add_common(*c);

  try {
    if (args.size() >= 2)
      for (auto& c : cmds)
        if (c->app->get_name() == args[1]) args = merge_config(args, *c->app);
    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitValidation;
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  for (auto& c : cmds) {
    if (!c->app->parsed()) continue;
    try {
      c->run(*c);
    } catch (const ValidationFailure& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitValidation;
    } catch (const InternalFailure& e) {
      std::cerr << "internal error: " << e.what() << "\n";
      return kExitInternal;
    }
    const std::string m = c->manifest();
    if (c->common.out == "-") {
      std::cerr << m;
    } else {
      std::ofstream f(c->common.out + ".manifest", std::ios::binary);
      if (!(f << m)) {
        std::cerr << "error: cannot write manifest\n";
        return kExitInternal;
      }
    }
    return kExitOk;
  }
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
