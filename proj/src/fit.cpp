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

#include "qstack/fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "qstack/error.hpp"

namespace qstack {

namespace {

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows[0].size()) : 0;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

}  // namespace

Minimum golden_section(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  const double x = (a + b) / 2.0;
  return {x, f(x)};
}

Minimum grid_then_golden(const std::function<double(double)>& f, const std::vector<double>& grid,
                         double tol, bool* at_edge) {
  require(!grid.empty(), "search grid must be nonempty");
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (at_edge) *at_edge = best == 0 || best + 1 == grid.size();
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[best + 1 == grid.size() ? best : best + 1];
  Minimum refined = golden_section(f, lo, hi, tol);
  if (refined.value <= best_value) return refined;
  return {grid[best], best_value};
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& design,
                                  const std::vector<double>& y) {
  require(design.size() == y.size(), "design rows must match observations");
  if (design.empty()) return {};
  const Eigen::MatrixXd a = to_matrix(design);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < a.cols()) return {};
  const Eigen::VectorXd x = qr.solve(b);
  return {x.data(), x.data() + x.size()};
}

double residual_sum(const std::vector<std::vector<double>>& design, const std::vector<double>& y,
                    const std::vector<double>& coeffs) {
  double ssr = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) fit += design[i][j] * coeffs[j];
    ssr += (y[i] - fit) * (y[i] - fit);
  }
  return ssr;
}

std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  require(degree >= 0, "polynomial degree must be nonnegative");
  require(x.size() == y.size(), "x and y must have equal length");
  std::vector<std::vector<double>> design;
  for (double xi : x) {
    std::vector<double> row(static_cast<std::size_t>(degree) + 1, 1.0);
    for (int k = 1; k <= degree; ++k) row[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k) - 1] * xi;
    design.push_back(std::move(row));
  }
  return least_squares(design, y);
}

std::vector<double> parameter_stderr(const std::vector<std::vector<double>>& jacobian, double ssr) {
  const std::size_t cols = jacobian.empty() ? 0 : jacobian[0].size();
  std::vector<double> out(cols, std::numeric_limits<double>::quiet_NaN());
  if (jacobian.size() <= cols) return out;
  const Eigen::MatrixXd j = to_matrix(jacobian);
  const Eigen::MatrixXd jtj = j.transpose() * j;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  if (!lu.isInvertible()) return out;
  const Eigen::MatrixXd cov = lu.inverse() * (ssr / static_cast<double>(jacobian.size() - cols));
  for (std::size_t i = 0; i < cols; ++i) out[i] = std::sqrt(std::max(0.0, cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i))));
  return out;
}

}  // namespace qstack
