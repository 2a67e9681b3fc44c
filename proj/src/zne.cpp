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

#include "qstack/zne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qstack/clifford.hpp"
#include "qstack/error.hpp"
#include "qstack/fit.hpp"
#include "qstack/parallel.hpp"

namespace qstack {

void NoiseScaledEnsemble::validate() const {
  base.validate();
  require(!base.gates.empty(), "base circuit must be nonempty");
  require(!levels.empty(), "levels must be nonempty");
  std::set<double> seen;
  for (double l : levels) {
    require(std::isfinite(l) && l >= 1.0, "noise levels must be >= 1");
    require(seen.insert(l).second, "noise levels must be distinct");
  }
  require(shots_per_level >= 1, "shots_per_level must be >= 1");
  require(reference_variance > 0.0, "reference_variance must be > 0");
  noise.validate();
}

ExtrapolationMethod parse_extrapolation(const std::string& text) {
  if (text == "richardson") return {ExtrapolationKind::Richardson, 0};
  if (text == "linear") return {ExtrapolationKind::Linear, 1};
  if (text == "exponential") return {ExtrapolationKind::Exponential, 0};
  if (text.rfind("poly", 0) == 0) {
    const std::string digits = text.substr(4);
    require(!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit),
            "polynomial method must look like poly2");
    return {ExtrapolationKind::Polynomial, std::stoi(digits)};
  }
  throw ValidationError("unknown extrapolation method '" + text + "'");
}

namespace {

// Random Clifford on the gate's qubits, then its inverse, remapped onto the
// circuit register.
void append_identity_block(Circuit& out, const Gate& layer, Rng& rng) {
  const int k = layer.arity();
  const CliffordTableau u = sample_uniform(k, rng);
  const Circuit forward = to_circuit(u);
  const Circuit backward = to_circuit(invert(u));
  for (const Circuit* part : {&forward, &backward}) {
    for (Gate g : part->gates) {
      for (int& t : g.targets)
        if (t >= 0) t = layer.targets[static_cast<std::size_t>(t)];
      out.add(g);
    }
  }
}

}  // namespace

Circuit fold_circuit(const Circuit& circuit, int blocks_per_layer, Rng& rng) {
  require(!circuit.gates.empty(), "circuit must be nonempty");
  require(blocks_per_layer >= 0, "blocks_per_layer must be >= 0");
  Circuit out(circuit.n_qubits);
  for (const Gate& g : circuit.gates) {
    out.add(g);
    for (int b = 0; b < blocks_per_layer; ++b) append_identity_block(out, g, rng);
  }
  return out;
}

Circuit fold_circuit(const Circuit& circuit, int blocks_per_layer, std::uint64_t seed) {
  Rng rng(seed);
  return fold_circuit(circuit, blocks_per_layer, rng);
}

Circuit fold_to_level(const Circuit& circuit, double level, Rng& rng) {
  require(!circuit.gates.empty(), "circuit must be nonempty");
  require(level >= 1.0, "level must be >= 1");
  const std::size_t layers = circuit.size();
  const double target = (level - 1.0) * static_cast<double>(layers);
  // Blocks are assigned round-robin over layers. A block that would
  // overshoot the target is kept with probability deficit / block size, so
  // the expected added gate count equals the target.
  std::vector<std::vector<Circuit>> blocks(layers);
  double added = 0.0;
  std::size_t turn = 0;
  while (added < target) {
    const std::size_t layer = turn % layers;
    Circuit block(circuit.n_qubits);
    append_identity_block(block, circuit.gates[layer], rng);
    if (block.size() == 0) continue;
    const auto size = static_cast<double>(block.size());
    if (added + size > target && !rng.bernoulli((target - added) / size)) break;
    added += size;
    blocks[layer].push_back(std::move(block));
    ++turn;
  }
  Circuit out(circuit.n_qubits);
  for (std::size_t i = 0; i < layers; ++i) {
    out.add(circuit.gates[i]);
    for (const Circuit& b : blocks[i]) out.append(b);
  }
  return out;
}

Circuit perturb_parameters(const Circuit& circuit, double variance, Rng& rng) {
  require(std::isfinite(variance) && variance >= 0.0, "variance must be >= 0");
  Circuit out = circuit;
  if (variance == 0.0) return out;
  const double sd = std::sqrt(variance);
  for (Gate& g : out.gates)
    if (g.kind == GateKind::RotationZ || g.kind == GateKind::RotationX) g.angle += rng.normal(0.0, sd);
  return out;
}

Circuit perturb_parameters(const Circuit& circuit, double variance, std::uint64_t seed) {
  Rng rng(seed);
  return perturb_parameters(circuit, variance, rng);
}

std::vector<LevelEstimate> collect(const NoiseScaledEnsemble& ensemble,
                                   const std::vector<Pauli>& observable) {
  ensemble.validate();
  require(static_cast<int>(observable.size()) == ensemble.base.n_qubits,
          "observable length must equal the qubit count");
  const std::size_t shots = static_cast<std::size_t>(ensemble.shots_per_level);
  const double base_gates = static_cast<double>(ensemble.base.size());
  std::vector<LevelEstimate> out;
  for (std::size_t li = 0; li < ensemble.levels.size(); ++li) {
    const double level = ensemble.levels[li];
    std::vector<int> outcome(shots);
    std::vector<std::size_t> gate_count(shots);
    parallel_for(shots, ensemble.threads, [&](std::size_t s) {
      Rng rng = Rng::stream(ensemble.seed, {li, s});
      Circuit c = ensemble.method == ScalingMethod::UnitaryFolding
                      ? fold_to_level(ensemble.base, level, rng)
                      : perturb_parameters(ensemble.base,
                                           (level - 1.0) * ensemble.reference_variance, rng);
      gate_count[s] = c.size();
      outcome[s] = sample_pauli(c, ensemble.noise, observable, rng);
    });
    double sum = 0.0, sum_sq = 0.0, gates = 0.0;
    for (std::size_t s = 0; s < shots; ++s) {
      sum += outcome[s];
      sum_sq += outcome[s] * outcome[s];
      gates += static_cast<double>(gate_count[s]);
    }
    const double n = static_cast<double>(shots);
    const double mean = sum / n;
    const double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
    LevelEstimate e;
    e.nominal = level;
    e.lambda = ensemble.method == ScalingMethod::UnitaryFolding ? gates / n / base_gates : level;
    e.shots = ensemble.shots_per_level;
    e.mean = mean;
    e.stderr_mean = std::sqrt(var / n);
    out.push_back(e);
  }
  return out;
}

namespace {

double lagrange_at_zero(const std::vector<double>& x, const std::vector<double>& y) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != i) w *= (0.0 - x[j]) / (x[i] - x[j]);
    total += w * y[i];
  }
  return total;
}

ExtrapolationResult polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  ExtrapolationResult r;
  r.coefficients = polyfit(x, y, degree);
  require(!r.coefficients.empty(), "polynomial fit is rank deficient");
  r.e_zero = r.coefficients[0];
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = 0.0, p = 1.0;
    for (double c : r.coefficients) {
      v += c * p;
      p *= x[i];
    }
    r.residual += (y[i] - v) * (y[i] - v);
  }
  return r;
}

struct ExpPart {
  double offset = 0.0;
  double scale = 0.0;
  double ssr = 0.0;
};

// y ~ offset + scale * c^x at fixed c.
ExpPart exp_amplitudes(const std::vector<double>& x, const std::vector<double>& y, double c) {
  std::vector<std::vector<double>> design;
  for (double xi : x) design.push_back({1.0, std::pow(c, xi)});
  const std::vector<double> coeffs = least_squares(design, y);
  ExpPart out;
  if (coeffs.empty()) {
    out.ssr = std::numeric_limits<double>::infinity();
    return out;
  }
  out.offset = coeffs[0];
  out.scale = coeffs[1];
  out.ssr = residual_sum(design, y, coeffs);
  return out;
}

}  // namespace

ExtrapolationResult extrapolate(const std::vector<double>& lambdas, const std::vector<double>& values,
                                ExtrapolationMethod method) {
  require(lambdas.size() == values.size(), "lambdas and values must have equal length");
  require(std::set<double>(lambdas.begin(), lambdas.end()).size() == lambdas.size(),
          "lambdas must be distinct");
  const std::size_t n = lambdas.size();
  require(n >= 2, "extrapolation needs at least two levels");
  ExtrapolationResult r;
  switch (method.kind) {
    case ExtrapolationKind::Richardson:
      r.e_zero = lagrange_at_zero(lambdas, values);
      r.coefficients = polyfit(lambdas, values, static_cast<int>(n) - 1);
      r.method_name = "richardson";
      break;
    case ExtrapolationKind::Linear:
      r = polynomial(lambdas, values, 1);
      r.method_name = "linear";
      break;
    case ExtrapolationKind::Polynomial:
      require(method.degree >= 0, "polynomial degree must be >= 0");
      require(n >= static_cast<std::size_t>(method.degree) + 1,
              "polynomial fit needs at least degree+1 levels");
      r = polynomial(lambdas, values, method.degree);
      r.method_name = "poly" + std::to_string(method.degree);
      break;
    case ExtrapolationKind::Exponential: {
      require(n >= 3, "exponential fit needs at least three levels");
      std::vector<double> grid;
      // Search over c = exp(-rate), rates log-spaced in [1e-4, 10].
      for (int i = 0; i < 200; ++i) grid.push_back(std::exp(-std::pow(10.0, -4.0 + 5.0 * (199 - i) / 199.0)));
      auto objective = [&](double c) { return exp_amplitudes(lambdas, values, c).ssr; };
      bool at_edge = false;
      const Minimum best = grid_then_golden(objective, grid, 1e-12, &at_edge);
      if (at_edge || !std::isfinite(best.value)) {
        r = polynomial(lambdas, values, 1);
        r.method_name = "exponential";
        r.fell_back = true;
        break;
      }
      const ExpPart part = exp_amplitudes(lambdas, values, best.x);
      r.coefficients = {part.offset, part.scale, best.x};
      r.e_zero = part.offset + part.scale;
      r.residual = part.ssr;
      r.method_name = "exponential";
      break;
    }
  }
  r.method = method;
  return r;
}

ExtrapolationResult extrapolate(const std::vector<LevelEstimate>& levels, ExtrapolationMethod method) {
  std::vector<double> x, y;
  for (const auto& l : levels) {
    x.push_back(l.lambda);
    y.push_back(l.mean);
  }
  return extrapolate(x, y, method);
}

Table level_table(const std::vector<LevelEstimate>& levels) {
  Table t({"lambda", "shots", "e_mean", "e_stderr"});
  for (const auto& l : levels) t.add_row({l.lambda, double(l.shots), l.mean, l.stderr_mean});
  return t;
}

Table extrapolation_table(const std::vector<ExtrapolationResult>& results) {
  Table t({"method", "e_zero", "residual", "fallback", "coefficients"});
  for (const auto& r : results) {
    std::string coeffs;
    for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
      if (i) coeffs += ' ';
      coeffs += format_number(r.coefficients[i]);
    }
    t.add_row({r.method_name, r.e_zero, r.residual, r.fell_back ? std::string("linear") : std::string("none"),
               coeffs});
  }
  return t;
}

}  // namespace qstack
