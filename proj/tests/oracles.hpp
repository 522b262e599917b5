// Copyright 2026 The stirpour Authors. All Rights Reserved.
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
// =============================================================================

// Independent reference implementations used as test oracles. Written from
// the textbook formulas, sharing no code with the library.

#ifndef STIRPOUR_TESTS_ORACLES_HPP
#define STIRPOUR_TESTS_ORACLES_HPP

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

// 2D poly6 kernel, 4 / (pi h^8) (h^2 - r^2)^3.
inline double poly6(double r, double h) {
  if (r >= h) return 0.0;
  return 4.0 / (std::numbers::pi * std::pow(h, 8)) * std::pow(h * h - r * r, 3);
}

// Gaussian elimination with partial pivoting; solves A x = b.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

// log det A for a symmetric positive definite A, via elimination pivots.
inline double log_det(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double s = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
    s += std::log(a[c][c]);
  }
  return s;
}

struct GpPrediction {
  double mu;
  double sigma;
};

// Exact GP posterior with standardized targets and an isotropic
// squared-exponential kernel: mu = k*^T (K + s2 I)^-1 y.
inline GpPrediction gp_predict(const std::vector<std::pair<double, double>>& x, const std::vector<double>& y,
                               std::pair<double, double> q, double ls, double sf2, double sn2) {
  const std::size_t n = y.size();
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  double scale = 1.0;
  if (n > 1) {
    double ss = 0.0;
    for (double v : y) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(n - 1);
    if (var > 0.0) scale = std::sqrt(var);
  }
  auto k = [&](std::pair<double, double> a, std::pair<double, double> b) {
    const double dx = a.first - b.first;
    const double dy = a.second - b.second;
    return sf2 * std::exp(-0.5 * (dx * dx + dy * dy) / (ls * ls));
  };
  std::vector<std::vector<double>> K(n, std::vector<double>(n));
  std::vector<double> ys(n), ks(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) K[i][j] = k(x[i], x[j]) + (i == j ? sn2 : 0.0);
    ys[i] = (y[i] - mean) / scale;
    ks[i] = k(x[i], q);
  }
  const auto alpha = solve(K, ys);
  const auto v = solve(K, ks);
  double mu = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += ks[i] * alpha[i];
    quad += ks[i] * v[i];
  }
  const double var = std::max(0.0, sf2 - quad);
  return {mean + scale * mu, scale * std::sqrt(var)};
}

// Composite Simpson rule on [a, b] with n (even) intervals.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle

#endif  // STIRPOUR_TESTS_ORACLES_HPP
