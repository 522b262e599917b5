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

#ifndef STIRPOUR_GP_HPP
#define STIRPOUR_GP_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "stirpour/errors.hpp"

namespace stirpour {

/// Squared-exponential kernel settings. Variances are expressed in units of
/// the standardized targets, so `signal_variance = 1` means "the sample
/// variance of the observations".
struct KernelConfig {
  double length_scale = 0.3;      // per dimension, in normalized input units
  double signal_variance = 1.0;
  double noise_variance = 1e-4;
  bool optimize = false;          // log-grid search of the marginal likelihood
};

struct Prediction {
  double mu = 0.0;
  double sigma = 0.0;
};

/// Exact Gaussian-process regression with a dense Cholesky factorization.
/// Immutable after `fit`.
template <int Dim>
class GaussianProcess {
 public:
  using Point = Eigen::Matrix<double, Dim, 1>;
  using Observation = std::pair<Point, double>;

  static GaussianProcess fit(const std::vector<Observation>& data, const KernelConfig& cfg = {}) {
    if (data.empty()) throw DomainError("GP fit needs at least one observation");
    for (const auto& [x, y] : data) {
      if (!std::isfinite(y) || !x.allFinite()) throw DomainError("GP fit got a non-finite observation");
    }
    GaussianProcess gp;
    gp.inputs_.reserve(data.size());
    Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) {
      gp.inputs_.push_back(data[i].first);
      y[static_cast<Eigen::Index>(i)] = data[i].second;
    }
    gp.targets_ = y;
    gp.mean_ = y.mean();
    if (data.size() > 1) {
      const double var = (y.array() - gp.mean_).square().sum() / static_cast<double>(data.size() - 1);
      gp.scale_ = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    gp.standardized_ = (y.array() - gp.mean_) / gp.scale_;

    gp.length_scales_ = Point::Constant(cfg.length_scale);
    gp.signal_variance_ = cfg.signal_variance;
    gp.noise_variance_ = cfg.noise_variance;
    if (cfg.optimize) gp.select_hyperparameters();
    gp.factorize();
    return gp;
  }

  Prediction predict(const Point& query) const {
    const Eigen::VectorXd k = cross_covariance(query);
    const double mu = k.dot(alpha_);
    const Eigen::VectorXd v = chol_.matrixL().solve(k);
    const double var = std::max(0.0, signal_variance_ - v.squaredNorm());
    return {mean_ + scale_ * mu, scale_ * std::sqrt(var)};
  }

  std::size_t size() const { return inputs_.size(); }
  const std::vector<Point>& inputs() const { return inputs_; }
  const Eigen::VectorXd& targets() const { return targets_; }
  const Point& length_scales() const { return length_scales_; }
  double signal_variance() const { return signal_variance_; }
  double noise_variance() const { return noise_variance_; }
  double target_mean() const { return mean_; }
  double target_scale() const { return scale_; }

  /// Log marginal likelihood of the standardized targets.
  double log_marginal_likelihood() const {
    const double n = static_cast<double>(inputs_.size());
    const double fit_term = -0.5 * standardized_.dot(alpha_);
    const double det_term = -chol_.matrixLLT().diagonal().array().log().sum();
    return fit_term + det_term - 0.5 * n * std::log(2.0 * std::numbers::pi);
  }

 private:
  GaussianProcess() = default;

  double kernel(const Point& a, const Point& b) const {
    const double r2 = ((a - b).array() / length_scales_.array()).square().sum();
    return signal_variance_ * std::exp(-0.5 * r2);
  }

  Eigen::VectorXd cross_covariance(const Point& q) const {
    Eigen::VectorXd k(static_cast<Eigen::Index>(inputs_.size()));
    for (std::size_t i = 0; i < inputs_.size(); ++i) k[static_cast<Eigen::Index>(i)] = kernel(inputs_[i], q);
    return k;
  }

  bool try_factorize() {
    const auto n = static_cast<Eigen::Index>(inputs_.size());
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        K(i, j) = K(j, i) = kernel(inputs_[static_cast<std::size_t>(i)], inputs_[static_cast<std::size_t>(j)]);
      }
      K(i, i) += noise_variance_;
    }
    chol_.compute(K);
    if (chol_.info() != Eigen::Success) return false;
    // Pivots far below the diagonal scale mean a numerically singular matrix.
    const double floor = 1e-10 * (signal_variance_ + noise_variance_);
    if ((chol_.matrixLLT().diagonal().array().square() < floor).any()) return false;
    alpha_ = chol_.solve(standardized_);
    return true;
  }

  void factorize() {
    if (!try_factorize()) {
      throw IllConditionedError("kernel matrix is not numerically positive definite (noise variance " +
                                std::to_string(noise_variance_) + " too small?)");
    }
  }

  void select_hyperparameters() {
    double best = -std::numeric_limits<double>::infinity();
    Point best_ls = length_scales_;
    double best_noise = noise_variance_;
    for (int i = 0; i < 12; ++i) {
      const double ls = 0.05 * std::pow(40.0, i / 11.0);  // 0.05 .. 2
      for (double noise : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
        length_scales_ = Point::Constant(ls);
        noise_variance_ = noise;
        if (!try_factorize()) continue;
        const double lml = log_marginal_likelihood();
        if (lml > best) {
          best = lml;
          best_ls = length_scales_;
          best_noise = noise;
        }
      }
    }
    length_scales_ = best_ls;
    noise_variance_ = best_noise;
  }

  std::vector<Point> inputs_;
  Eigen::VectorXd targets_;
  Eigen::VectorXd standardized_;
  double mean_ = 0.0;
  double scale_ = 1.0;
  Point length_scales_;
  double signal_variance_ = 1.0;
  double noise_variance_ = 1e-4;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd alpha_;
};

using GpModel = GaussianProcess<2>;
using Point2 = GpModel::Point;

}  // namespace stirpour

#endif  // STIRPOUR_GP_HPP
