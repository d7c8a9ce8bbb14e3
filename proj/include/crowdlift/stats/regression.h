/*
 * Copyright 2026 The Crowdlift Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CROWDLIFT_STATS_REGRESSION_H_
#define CROWDLIFT_STATS_REGRESSION_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace crowdlift::stats {

struct ConvergenceReport {
  int iterations = 0;
  double gradient_sup_norm = 0.0;
  int step_halvings = 0;
  bool converged = false;
};

struct LogitOptions {
  bool add_intercept = true;
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;
  // Any |beta| beyond this is treated as complete or quasi-complete
  // separation: the likelihood has no finite maximizer in that direction.
  double separation_bound = 30.0;
};

// Coefficients are ordered intercept first (when present), then the columns
// of X. Covariance is the inverse observed information.
struct LogitFit {
  std::vector<std::string> names;
  Eigen::VectorXd beta;
  Eigen::MatrixXd covariance;
  double log_likelihood = 0.0;
  double null_log_likelihood = 0.0;
  double mcfadden_r2 = 0.0;
  bool has_intercept = true;
  std::size_t num_obs = 0;
  ConvergenceReport convergence;

  Eigen::VectorXd StandardErrors() const { return covariance.diagonal().cwiseSqrt(); }
};

// Newton-Raphson with step halving. Throws ValidationError on bad shapes or
// labels, NumericalError on a singular information matrix, on separation, or
// when 100 iterations do not reach the gradient tolerance.
LogitFit FitLogistic(const Eigen::MatrixXd& x, std::span<const int> y,
                     std::vector<std::string> names = {}, const LogitOptions& options = {});

// The design matrix FitLogistic works with (leading ones column if asked).
Eigen::MatrixXd LogisticDesign(const Eigen::MatrixXd& x, bool add_intercept);
double LogisticLogLikelihood(const Eigen::MatrixXd& design, std::span<const int> y,
                             const Eigen::VectorXd& beta);
Eigen::VectorXd LogisticGradient(const Eigen::MatrixXd& design, std::span<const int> y,
                                 const Eigen::VectorXd& beta);

enum class RegressorKind { kContinuous, kBinary };

struct AmeEntry {
  std::string name;
  RegressorKind kind = RegressorKind::kContinuous;
  double ame = 0.0;
  double se = 0.0;
  double p_value = 1.0;
};

struct AmeReport {
  std::vector<AmeEntry> entries;
};

// One kind per column of X (the intercept has none). Continuous: mean of
// beta_k p (1 - p). Binary: mean of p(x_k = 1) - p(x_k = 0). SEs by the delta
// method with the analytic Jacobian. Throws ValidationError when the kind
// list does not match X.
AmeReport AverageMarginalEffects(const LogitFit& fit, const Eigen::MatrixXd& x,
                                 std::span<const RegressorKind> kinds);

struct OlsFit {
  std::vector<std::string> names;
  Eigen::VectorXd beta;
  Eigen::VectorXd se;
  Eigen::VectorXd p_values;  // two-sided normal
  Eigen::MatrixXd covariance;
  double r2 = 0.0;
  double residual_variance = 0.0;
  std::size_t num_obs = 0;
};

// Column-pivoted QR. Classical SEs from sigma^2 (X'X)^-1 with n - p degrees
// of freedom. Throws NumericalError on rank deficiency.
OlsFit FitOls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::vector<std::string> names = {},
              bool add_intercept = true);

struct WaldResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Tests c'beta = 0. Throws NumericalError when c'Sigma c <= 0.
WaldResult WaldTest(const Eigen::VectorXd& beta, const Eigen::MatrixXd& covariance,
                    const Eigen::VectorXd& c);

// One CSV row per term:
// term,estimate,se,p_value,stars.
std::string FormatCoefficientCsv(std::span<const std::string> names, const Eigen::VectorXd& estimate,
                                 const Eigen::VectorXd& se, const Eigen::VectorXd& p_values);
std::string FormatAmeCsv(const AmeReport& report);

}  // namespace crowdlift::stats

#endif  // CROWDLIFT_STATS_REGRESSION_H_
