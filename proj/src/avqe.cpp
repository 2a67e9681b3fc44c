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

#include "qstack/avqe.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "qstack/error.hpp"
#include "qstack/parallel.hpp"

namespace qstack {

double wrap_angle(double x) {
  if (x >= -kPi && x <= kPi) return x;
  double r = std::remainder(x, 2.0 * kPi);
  if (r < -kPi) r += 2.0 * kPi;
  if (r > kPi) r -= 2.0 * kPi;
  return r;
}

void AqpeConfig::validate() const {
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must be in [0, 1]");
  require(precision > 0.0 && precision < 1.0, "precision must be in (0, 1)");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(max_iterations >= 1, "max_iterations must be >= 1");
  require(min_accept >= 2, "min_accept must be >= 2");
  require(max_retries >= 0, "max_retries must be >= 0");
  require(inflation > 1.0, "inflation must be > 1");
  require(prior.sigma > 0.0 && std::isfinite(prior.sigma), "prior sigma must be > 0");
}

double outcome_probability(int outcome, double phi, int depth, double theta, int sign) {
  require(outcome == 0 || outcome == 1, "outcome must be 0 or 1");
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  return 0.5 * (1.0 + (1 - 2 * outcome) * std::cos(depth * (theta - sign * phi)));
}

int schedule_depth(double sigma, double alpha) {
  require(sigma > 0.0, "sigma must be > 0");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must be in [0, 1]");
  const double m = std::floor(std::pow(sigma, -alpha) + 0.5);
  if (!(m < 1e9)) return 1000000000;
  return std::max(1, static_cast<int>(m));
}

namespace {

constexpr double kGoldenFraction = 0.61803398874989484820;
constexpr auto kFastDouble =
    boost::math::policies::make_policy(boost::math::policies::promote_double<false>());

int pick_sign(int fixed, Rng& rng) {
  if (fixed != 0) return fixed;
  return rng.bernoulli(0.5) ? 1 : -1;
}

}  // namespace

AnalyticOracle::AnalyticOracle(double phi, int sign) : phi_(phi), fixed_sign_(sign) {
  require(phi >= -kPi && phi <= kPi, "phi must be in [-pi, pi]");
  require(sign == 0 || sign == 1 || sign == -1, "sign must be -1, 0 or +1");
}

int AnalyticOracle::begin_run(Rng& rng) {
  sign_ = pick_sign(fixed_sign_, rng);
  return sign_;
}

int AnalyticOracle::measure(int depth, double theta, Rng& rng) {
  return rng.bernoulli(outcome_probability(0, phi_, depth, theta, sign_)) ? 0 : 1;
}

CircuitOracle::CircuitOracle(const Circuit& preparation, const std::vector<Pauli>& pauli,
                             const NoiseModel& noise, int sign)
    : noise_(noise), fixed_sign_(sign) {
  preparation.validate();
  noise.validate();
  require(static_cast<int>(pauli.size()) == preparation.n_qubits, "Pauli length must equal the qubit count");
  require(sign == 0 || sign == 1 || sign == -1, "sign must be -1, 0 or +1");
  StateVector psi(preparation.n_qubits);
  psi.apply(preparation);
  auto apply_p = [&](StateVector& v) {
    for (int q = 0; q < v.n_qubits(); ++q) v.apply_pauli(q, pauli[static_cast<std::size_t>(q)]);
  };
  // Reflection about psi: v - 2 psi <psi|v>.
  auto reflect = [&](StateVector& v) {
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < psi.amplitudes().size(); ++i)
      overlap += std::conj(psi.amplitudes()[i]) * v.amplitudes()[i];
    for (std::size_t i = 0; i < psi.amplitudes().size(); ++i)
      v.amplitudes()[i] -= 2.0 * overlap * psi.amplitudes()[i];
  };
  StateVector v = psi;
  apply_p(v);
  reflect(v);
  apply_p(v);
  reflect(v);
  Complex amp = 0.0;
  for (std::size_t i = 0; i < psi.amplitudes().size(); ++i)
    amp += std::conj(psi.amplitudes()[i]) * v.amplitudes()[i];
  // sin(phi) is the norm of the part of U psi orthogonal to psi.
  double orth = 0.0;
  for (std::size_t i = 0; i < psi.amplitudes().size(); ++i)
    orth += std::norm(v.amplitudes()[i] - amp * psi.amplitudes()[i]);
  phi_ = std::atan2(std::sqrt(orth), amp.real());
}

int CircuitOracle::begin_run(Rng& rng) {
  sign_ = pick_sign(fixed_sign_, rng);
  return sign_;
}

int CircuitOracle::measure(int depth, double theta, Rng& rng) {
  Circuit c(1);
  c.add(Gate::h(0));
  c.add(Gate::controlled_phase(0, depth, -sign_ * phi_));
  c.add(Gate::controlled_phase(0, depth, theta));
  c.add(Gate::h(0));
  return static_cast<int>(sample_shot(c, noise_, rng) & 1u);
}

std::pair<GaussianPrior, IterationRecord> aqpe_iteration(const GaussianPrior& prior,
                                                         const AqpeConfig& config,
                                                         MeasurementOracle& oracle, Rng& rng) {
  IterationRecord rec;
  rec.depth = schedule_depth(prior.sigma, config.alpha);
  rec.theta = prior.mu - prior.sigma;
  rec.outcome = oracle.measure(rec.depth, rec.theta, rng);

  const double contrast = rec.outcome == 0 ? 1.0 : -1.0;
  std::size_t batch = static_cast<std::size_t>(config.batch_size);
  for (int attempt = 0; attempt <= config.max_retries; ++attempt, batch *= 2) {
    // Candidates stay unwrapped around the prior mean so the moments are
    // not split across the branch cut.
    thread_local std::vector<double> offsets, likelihoods, uniforms;
    offsets.resize(batch);
    likelihoods.resize(batch);
    uniforms.resize(batch);
    const double shift_x = rng.uniform();
    const double shift_u = rng.uniform();
    double peak = 0.0;
    for (std::size_t j = 0; j < batch; ++j) {
      double z = 0.0, u = 0.0;
      if (config.lattice_draws) {
        // Randomly shifted rank-1 lattice: each pair is marginally
        // (normal, uniform) but the set covers the plane evenly.
        double x = (static_cast<double>(j) + 0.5) / static_cast<double>(batch) + shift_x;
        x -= std::floor(x);
        x = std::clamp(x, 1e-300, 1.0 - 1e-16);
        z = -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * x, kFastDouble);
        u = static_cast<double>(j) * kGoldenFraction + shift_u;
        u -= std::floor(u);
      } else {
        z = rng.normal();
        u = rng.uniform();
      }
      const double offset = prior.sigma * z;
      const double l = 0.5 * (1.0 + contrast * std::cos(rec.depth * (rec.theta - prior.mu - offset)));
      offsets[j] = offset;
      likelihoods[j] = l;
      uniforms[j] = u;
      peak = std::max(peak, l);
    }
    const double bound = config.scale_to_batch_max && peak > 0.0 ? peak : 1.0;
    double sum = 0.0, sum_sq = 0.0, all = 0.0, all_sq = 0.0, weight = 0.0;
    int accepted = 0;
    for (std::size_t j = 0; j < batch; ++j) {
      all += offsets[j];
      all_sq += offsets[j] * offsets[j];
      const bool keep = uniforms[j] * bound < likelihoods[j];
      accepted += keep;
      const double w = config.weighted_moments ? likelihoods[j] : keep;
      weight += w;
      sum += w * offsets[j];
      sum_sq += w * offsets[j] * offsets[j];
    }
    rec.accepted = accepted;
    if (accepted >= config.min_accept) {
      // Accepted moments are taken relative to those of the whole candidate
      // set, so a batch that accepts everything returns the prior exactly
      // and the finite-batch spread bias cancels.
      const double n = static_cast<double>(batch);
      const double all_mean = all / n;
      const double all_var = all_sq / n - all_mean * all_mean;
      const double mean = sum / weight;
      const double var = std::max(0.0, sum_sq / weight - mean * mean);
      const double shift = config.relative_moments ? mean - all_mean : mean;
      const double post_var = config.relative_moments && all_var > 0.0
                                  ? prior.sigma * prior.sigma * var / all_var
                                  : var * accepted / std::max(1, accepted - 1);
      GaussianPrior post{wrap_angle(prior.mu + shift), std::sqrt(post_var)};
      if (post.sigma > 0.0) {
        rec.mu = post.mu;
        rec.sigma = post.sigma;
        return {post, rec};
      }
    }
  }
  rec.fallback = true;
  GaussianPrior post{prior.mu, prior.sigma * config.inflation};
  rec.mu = post.mu;
  rec.sigma = post.sigma;
  return {post, rec};
}

AqpeRun estimate_phase(const AqpeConfig& config, MeasurementOracle& oracle) {
  config.validate();
  Rng rng(config.seed);
  AqpeRun run;
  run.sign = oracle.begin_run(rng);
  GaussianPrior state = config.prior;
  state.mu = wrap_angle(state.mu);
  while (state.sigma >= config.precision && run.iterations < config.max_iterations) {
    auto [next, rec] = aqpe_iteration(state, config, oracle, rng);
    rec.iteration = ++run.iterations;
    ++run.depth_counts[rec.depth];
    run.history.push_back(rec);
    state = next;
  }
  run.mu = state.mu;
  run.sigma = state.sigma;
  run.converged = state.sigma < config.precision;
  return run;
}

double n_measurements(double p, double alpha) {
  require(p > 0.0 && p < 1.0, "p must be in (0, 1)");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must be in [0, 1]");
  if (alpha == 1.0) return 4.0 * std::log(1.0 / p);
  // Extended precision so decimal inputs land on the nearest double.
  const long double r = 1.0L - alpha;
  return static_cast<double>(2.0L / r * std::expm1(-2.0L * r * std::log(static_cast<long double>(p))));
}

double alpha_max(double p, double d) {
  require(p > 0.0 && p < 1.0, "p must be in (0, 1)");
  require(d >= 1.0, "d must be >= 1");
  return std::min(-std::log(d) / std::log(p), 1.0);
}

double n_min(double p, double d) {
  require(p > 0.0 && p < 1.0, "p must be in (0, 1)");
  require(d >= 1.0, "d must be >= 1");
  const double pd = p * d;
  if (pd >= 1.0) return 4.0 * std::log(1.0 / p);
  return 2.0 * std::log(p) / std::log(pd) * (1.0 / (pd * pd) - 1.0);
}

double circuit_gates(int depth, int prep_gates) {
  return 4.0 * depth * (prep_gates + 1) + prep_gates + 3;
}

GateTotals gate_costs(double p, int prep_gates, const std::map<int, double>& depth_counts) {
  require(p > 0.0 && p < 1.0, "p must be in (0, 1)");
  require(prep_gates >= 0, "prep_gates must be >= 0");
  GateTotals out;
  out.vqe = (prep_gates + 1) / (p * p);
  for (const auto& [m, count] : depth_counts) out.avqe += count * circuit_gates(m, prep_gates);
  return out;
}

std::map<int, double> median_depth_counts(const std::vector<AqpeRun>& runs) {
  std::set<int> depths;
  for (const auto& r : runs)
    for (const auto& [m, c] : r.depth_counts) depths.insert(m);
  std::map<int, double> out;
  for (int m : depths) {
    std::vector<double> v;
    for (const auto& r : runs) {
      auto it = r.depth_counts.find(m);
      v.push_back(it == r.depth_counts.end() ? 0.0 : it->second);
    }
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    const double med = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    if (med > 0.0) out[m] = med;
  }
  return out;
}

std::vector<AqpeRun> simulate_runs(const AqpeConfig& config, double phi, int runs, unsigned threads) {
  require(runs >= 1, "runs must be >= 1");
  std::vector<AqpeRun> out(static_cast<std::size_t>(runs));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    AqpeConfig c = config;
    c.seed = config.seed + i;
    AnalyticOracle oracle(phi);
    out[i] = estimate_phase(c, oracle);
    out[i].history.clear();
    out[i].history.shrink_to_fit();
  });
  return out;
}

std::vector<PauliTerm> parse_hamiltonian(std::string_view text) {
  std::vector<PauliTerm> out;
  std::string chunk;
  auto flush = [&] {
    std::istringstream in(chunk);
    chunk.clear();
    std::string coeff, pauli, extra;
    if (!(in >> coeff)) return;
    require(static_cast<bool>(in >> pauli), "hamiltonian term needs a coefficient and a pauli string");
    require(!(in >> extra), "hamiltonian term has trailing tokens");
    PauliTerm t;
    std::size_t used = 0;
    try {
      t.coefficient = std::stod(coeff, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == coeff.size() && std::isfinite(t.coefficient), "hamiltonian coefficient '" + coeff + "' is not a number");
    t.pauli = parse_pauli(pauli);
    out.push_back(std::move(t));
  };
  for (char ch : text) {
    if (ch == ';' || ch == '\n') flush();
    else chunk += ch;
  }
  flush();
  require(!out.empty(), "hamiltonian must have at least one term");
  return out;
}

EnergyEstimate estimate_energy(const std::vector<PauliTerm>& hamiltonian, const Circuit& preparation,
                               const AqpeConfig& config) {
  preparation.validate();
  require(!hamiltonian.empty(), "hamiltonian must have at least one term");
  StateVector psi(preparation.n_qubits);
  psi.apply(preparation);
  EnergyEstimate out;
  for (std::size_t i = 0; i < hamiltonian.size(); ++i) {
    const PauliTerm& term = hamiltonian[i];
    require(std::isfinite(term.coefficient), "coefficients must be finite");
    require(static_cast<int>(term.pauli.size()) == preparation.n_qubits,
            "Pauli length must equal the qubit count");
    const double exact = expectation(psi, term.pauli);
    const double phi = 2.0 * std::acos(std::clamp(std::abs(exact), 0.0, 1.0));
    AnalyticOracle oracle(phi);
    AqpeConfig c = config;
    c.seed = Rng::splitmix64(config.seed + i);
    const AqpeRun run = estimate_phase(c, oracle);
    out.converged = out.converged && run.converged;
    const double magnitude = std::cos(run.mu / 2.0);
    out.energy += term.coefficient * (exact < 0 ? -1.0 : 1.0) * magnitude;
  }
  return out;
}

Table history_table(const AqpeRun& run) {
  Table t({"iter", "M", "theta", "E", "accepted", "mu", "sigma"});
  for (const auto& r : run.history)
    t.add_row({double(r.iteration), double(r.depth), r.theta, double(r.outcome), double(r.accepted), r.mu,
               r.sigma});
  return t;
}

}  // namespace qstack
