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

#include <functional>
#include <vector>

namespace qstack {

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a minimum of a unimodal `f` on [lo, hi].
Minimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                       double tol = 1e-8);

/// Scans `grid` then refines between the neighbours of the best grid point.
/// `at_edge` is set when the best grid point is the first or last one.
Minimum grid_then_golden(const std::function<double(double)>& f, const std::vector<double>& grid,
                         double tol, bool* at_edge = nullptr);

/// Least-squares coefficients for y ~ design * c (design is row-major,
/// rows.size() == y.size()). Returns an empty vector when rank-deficient.
std::vector<double> least_squares(const std::vector<std::vector<double>>& design,
                                  const std::vector<double>& y);

/// Sum of squared residuals of a fitted linear model.
double residual_sum(const std::vector<std::vector<double>>& design, const std::vector<double>& y,
                    const std::vector<double>& coeffs);

/// Polynomial fit of degree `degree`; coefficients lowest power first.
std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree);

/// Covariance diagonal sqrt(s^2 (J^T J)^{-1}) with s^2 = ssr / (rows - cols).
/// Entries are NaN if the model has no spare degrees of freedom.
std::vector<double> parameter_stderr(const std::vector<std::vector<double>>& jacobian, double ssr);

}  // namespace qstack
