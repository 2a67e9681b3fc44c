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

#include "qstack/rb.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qstack/clifford.hpp"
#include "qstack/error.hpp"
#include "qstack/fit.hpp"
#include "qstack/parallel.hpp"

namespace qstack {

void RbConfig::validate() const {
  require(n_qubits >= 1 && n_qubits <= CliffordTableau::kMaxSampledQubits,
          "n_qubits must be in [1, 3]");
  require(!depths.empty(), "depths must be nonempty");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    require(depths[i] >= 1, "depths must be positive");
    if (i) require(depths[i] > depths[i - 1], "depths must be strictly increasing");
  }
  require(sequences_per_depth >= 1, "sequences_per_depth must be >= 1");
  require(reuse_factor >= 1, "reuse_factor must be >= 1");
  noise.validate();
}

Circuit generate_sequence(int n_qubits, int m, Rng& rng) {
  require(m >= 1, "sequence length m must be >= 1");
  Circuit circuit(n_qubits);
  CliffordTableau product = CliffordTableau::identity(n_qubits);
  for (int i = 0; i < m; ++i) {
    const CliffordTableau c = sample_uniform(n_qubits, rng);
    circuit.append(to_circuit(c));
    product = compose(product, c);
  }
  circuit.append(to_circuit(invert(product)));
  return circuit;
}

Circuit generate_sequence(int n_qubits, int m, std::uint64_t seed) {
  Rng rng(seed);
  return generate_sequence(n_qubits, m, rng);
}

std::vector<SurvivalPoint> estimate_survival(const RbConfig& config) {
  config.validate();
  const std::size_t per_depth = static_cast<std::size_t>(config.sequences_per_depth);
  const std::size_t total = config.depths.size() * per_depth;
  std::vector<int> hits(total, 0);
  parallel_for(total, config.threads, [&](std::size_t i) {
    const std::size_t d = i / per_depth;
    const std::size_t s = i % per_depth;
    Rng rng = Rng::stream(config.seed, {d, s});
    const Circuit circuit = generate_sequence(config.n_qubits, config.depths[d], rng);
    int count = 0;
    for (int shot = 0; shot < config.reuse_factor; ++shot)
      if (sample_shot(circuit, config.noise, rng) == 0) ++count;
    hits[i] = count;
  });

  std::vector<SurvivalPoint> out;
  const double l = config.reuse_factor;
  for (std::size_t d = 0; d < config.depths.size(); ++d) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < per_depth; ++s) {
      const double f = hits[d * per_depth + s] / l;
      sum += f;
      sum_sq += f * f;
    }
    const double k = static_cast<double>(per_depth);
    const double mean = sum / k;
    // Between-circuit spread of per-circuit fractions; with l = 1 this is
    // the binomial standard error.
    const double var = k > 1 ? std::max(0.0, (sum_sq - k * mean * mean) / (k - 1)) : 0.0;
    out.push_back({config.depths[d], config.sequences_per_depth, config.reuse_factor, mean,
                   std::sqrt(var / k)});
  }
  return out;
}

namespace {

struct LinearPart {
  double a = 0.0;
  double b = 0.0;
  double ssr = 0.0;
};

// Closed-form least squares for y ~ a + b * p^m at fixed p.
LinearPart solve_amplitudes(const std::vector<int>& depths, const std::vector<double>& y, double p) {
  const double n = static_cast<double>(y.size());
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    x[i] = std::pow(p, depths[i]);
    sx += x[i];
    sxx += x[i] * x[i];
    sy += y[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  LinearPart out;
  if (std::abs(det) < 1e-300) {
    out.a = sy / n;
  } else {
    out.b = (n * sxy - sx * sy) / det;
    out.a = (sy - out.b * sx) / n;
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - out.a - out.b * x[i];
    out.ssr += r * r;
  }
  return out;
}

}  // namespace

RbFitReport fit_decay(const std::vector<int>& depths, const std::vector<double>& survival) {
  require(depths.size() == survival.size(), "depths and survival must have equal length");
  require(std::set<int>(depths.begin(), depths.end()).size() >= 3,
          "fit needs at least three distinct depths");
  RbFitReport report;
  report.separable.method = "separable";
  report.log_linear.method = "log_linear";

  const bool flat = std::all_of(survival.begin(), survival.end(),
                                [&](double v) { return v == survival.front(); });
  if (flat) {
    for (RbFit* f : {&report.separable, &report.log_linear}) {
      f->A = survival.front();
      f->B = 0.0;
      f->p = 1.0;
      f->identifiable = false;
      f->p_stderr = std::nan("");
    }
    return report;
  }

  std::vector<double> grid;
  for (int i = 1; i <= 999; ++i) grid.push_back(i * 0.001);
  auto objective = [&](double p) { return solve_amplitudes(depths, survival, p).ssr; };
  const Minimum best = grid_then_golden(objective, grid, 1e-8);
  const LinearPart amp = solve_amplitudes(depths, survival, best.x);
  RbFit& sep = report.separable;
  sep.p = best.x;
  sep.A = amp.a;
  sep.B = amp.b;
  sep.residual = amp.ssr;
  std::vector<std::vector<double>> jac;
  for (int m : depths)
    jac.push_back({1.0, std::pow(sep.p, m), sep.B * m * std::pow(sep.p, m - 1)});
  sep.p_stderr = parameter_stderr(jac, amp.ssr)[2];

  // log y = log B + m log p, valid when the asymptote A is near zero.
  std::vector<std::vector<double>> design;
  std::vector<double> logs;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (survival[i] <= 0.0) continue;
    design.push_back({1.0, static_cast<double>(depths[i])});
    logs.push_back(std::log(survival[i]));
  }
  RbFit& lin = report.log_linear;
  const std::vector<double> c = design.size() >= 2 ? least_squares(design, logs) : std::vector<double>{};
  if (c.empty()) {
    lin.identifiable = false;
    lin.p = std::nan("");
    lin.p_stderr = std::nan("");
  } else {
    lin.A = 0.0;
    lin.B = std::exp(c[0]);
    lin.p = std::exp(c[1]);
    for (std::size_t i = 0; i < depths.size(); ++i) {
      const double r = survival[i] - lin.B * std::pow(lin.p, depths[i]);
      lin.residual += r * r;
    }
    const double slope_se = parameter_stderr(design, residual_sum(design, logs, c))[1];
    lin.p_stderr = lin.p * slope_se;
  }
  return report;
}

RbFitReport fit_decay(const std::vector<SurvivalPoint>& points) {
  std::vector<int> depths;
  std::vector<double> survival;
  for (const auto& pt : points) {
    depths.push_back(pt.m);
    survival.push_back(pt.mean);
  }
  return fit_decay(depths, survival);
}

Table survival_table(const std::vector<SurvivalPoint>& points) {
  Table t({"m", "n_circuits", "shots_per_circuit", "survival_mean", "survival_stderr"});
  for (const auto& pt : points)
    t.add_row({double(pt.m), double(pt.n_circuits), double(pt.shots_per_circuit), pt.mean,
               pt.stderr_mean});
  return t;
}

Table fit_table(const RbFitReport& report) {
  Table t({"A", "B", "p", "residual", "method"});
  for (const RbFit* f : {&report.separable, &report.log_linear}) {
    const std::string method = f->identifiable ? f->method : f->method + ":p_unidentifiable";
    t.add_row({f->A, f->B, f->p, f->residual, method});
  }
  return t;
}

}  // namespace qstack
