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

#include "crowdlift/stats/regression.h"

#include <cmath>
#include <sstream>

#include "crowdlift/common/error.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/stats/distributions.h"

namespace crowdlift::stats {
namespace {

// Fitted probabilities this close to 0 or 1 only arise when the likelihood
// keeps rising along some direction, i.e. the data are separated.
constexpr double kSaturation = 1e-8;

std::vector<std::string> DefaultNames(std::vector<std::string> names, Eigen::Index cols,
                                      bool intercept) {
  if (names.empty()) {
    for (Eigen::Index j = 0; j < cols; ++j) names.push_back("x" + std::to_string(j + 1));
  } else if (static_cast<Eigen::Index>(names.size()) != cols) {
    throw ValidationError("got " + std::to_string(names.size()) + " names for " +
                          std::to_string(cols) + " columns");
  }
  if (intercept) names.insert(names.begin(), "(intercept)");
  return names;
}

Eigen::VectorXd Probabilities(const Eigen::MatrixXd& design, const Eigen::VectorXd& beta) {
  return (design * beta).unaryExpr([](double v) { return Sigmoid(v); });
}

Eigen::MatrixXd Information(const Eigen::MatrixXd& design, const Eigen::VectorXd& p) {
  const Eigen::VectorXd w = p.array() * (1.0 - p.array());
  return design.transpose() * w.asDiagonal() * design;
}

Eigen::MatrixXd InvertInformation(const Eigen::MatrixXd& info) {
  Eigen::LLT<Eigen::MatrixXd> llt(info);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-13) {
    throw NumericalError("information matrix is singular; check for constant or collinear regressors");
  }
  const Eigen::Index q = info.rows();
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(q, q));
  return 0.5 * (inv + inv.transpose());
}

void CheckSeparation(const Eigen::VectorXd& beta, double bound) {
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (!(std::fabs(beta(j)) <= bound)) {
      throw NumericalError("complete or quasi-complete separation: |beta_" + std::to_string(j) +
                           "| exceeds " + FormatDouble(bound));
    }
  }
}

}  // namespace

Eigen::MatrixXd LogisticDesign(const Eigen::MatrixXd& x, bool add_intercept) {
  if (!add_intercept) return x;
  Eigen::MatrixXd d(x.rows(), x.cols() + 1);
  d.col(0).setOnes();
  d.rightCols(x.cols()) = x;
  return d;
}

double LogisticLogLikelihood(const Eigen::MatrixXd& design, std::span<const int> y,
                             const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = design * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    // log sigma(eta) = -log1p(exp(-eta)), computed stably on both tails.
    const double e = eta(i);
    const double log1pexp = e > 0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
    ll += y[static_cast<std::size_t>(i)] * e - log1pexp;
  }
  return ll;
}

Eigen::VectorXd LogisticGradient(const Eigen::MatrixXd& design, std::span<const int> y,
                                 const Eigen::VectorXd& beta) {
  Eigen::VectorXd resid = -Probabilities(design, beta);
  for (Eigen::Index i = 0; i < resid.size(); ++i) resid(i) += y[static_cast<std::size_t>(i)];
  return design.transpose() * resid;
}

LogitFit FitLogistic(const Eigen::MatrixXd& x, std::span<const int> y, std::vector<std::string> names,
                     const LogitOptions& options) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (y.size() != n) throw ValidationError("logistic: X and y differ in length");
  if (!x.allFinite()) throw ValidationError("logistic: X has missing or infinite cells");
  std::size_t positives = 0;
  for (int v : y) {
    if (v != 0 && v != 1) throw ValidationError("logistic: outcome must be 0 or 1");
    positives += static_cast<std::size_t>(v);
  }
  LogitFit fit;
  fit.has_intercept = options.add_intercept;
  fit.names = DefaultNames(std::move(names), x.cols(), options.add_intercept);
  fit.num_obs = n;
  const Eigen::MatrixXd design = LogisticDesign(x, options.add_intercept);
  const Eigen::Index q = design.cols();
  if (static_cast<Eigen::Index>(n) <= q) {
    throw ValidationError("logistic: need more observations than coefficients");
  }
  if (positives == 0 || positives == n) {
    throw NumericalError("complete separation: the outcome is constant");
  }

  const double ybar = static_cast<double>(positives) / static_cast<double>(n);
  fit.null_log_likelihood =
      options.add_intercept
          ? static_cast<double>(n) * (ybar * std::log(ybar) + (1.0 - ybar) * std::log(1.0 - ybar))
          : static_cast<double>(n) * std::log(0.5);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(q);
  if (options.add_intercept) beta(0) = std::log(ybar / (1.0 - ybar));
  double ll = LogisticLogLikelihood(design, y, beta);
  ConvergenceReport& report = fit.convergence;
  for (report.iterations = 0; report.iterations <= options.max_iterations; ++report.iterations) {
    const Eigen::VectorXd grad = LogisticGradient(design, y, beta);
    report.gradient_sup_norm = grad.cwiseAbs().maxCoeff();
    if (report.gradient_sup_norm < options.gradient_tolerance) {
      report.converged = true;
      // One polishing step: Newton converges quadratically, so this takes
      // the estimate from tolerance level to round-off level.
      const Eigen::VectorXd p = Probabilities(design, beta);
      Eigen::LDLT<Eigen::MatrixXd> ldlt(Information(design, p));
      if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
        const Eigen::VectorXd polished = beta + ldlt.solve(grad);
        const double polished_norm = LogisticGradient(design, y, polished).cwiseAbs().maxCoeff();
        if (polished_norm < report.gradient_sup_norm && polished.allFinite()) {
          beta = polished;
          ll = LogisticLogLikelihood(design, y, beta);
          report.gradient_sup_norm = polished_norm;
        }
      }
      break;
    }
    if (report.iterations == options.max_iterations) break;
    const Eigen::VectorXd p = Probabilities(design, beta);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Information(design, p));
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      throw NumericalError("information matrix is singular during Newton iterations");
    }
    Eigen::VectorXd step = ldlt.solve(grad);
    Eigen::VectorXd next = beta + step;
    double next_ll = LogisticLogLikelihood(design, y, next);
    // Halve only on a real decrease; near the optimum the likelihood change
    // drops below round-off and a full Newton step is the right move.
    const double slack = 1e-12 * (1.0 + std::fabs(ll));
    for (int h = 0; h < 40 && !(next_ll >= ll - slack); ++h) {
      step *= 0.5;
      next = beta + step;
      next_ll = LogisticLogLikelihood(design, y, next);
      ++report.step_halvings;
    }
    CheckSeparation(next, options.separation_bound);
    if (next == beta) {  // no representable progress left
      report.gradient_sup_norm = LogisticGradient(design, y, beta).cwiseAbs().maxCoeff();
      report.converged = report.gradient_sup_norm < options.gradient_tolerance;
      break;
    }
    beta = std::move(next);
    ll = next_ll;
  }
  if (!report.converged) {
    throw NumericalError("logistic regression did not converge in " +
                         std::to_string(options.max_iterations) + " iterations (gradient " +
                         FormatDouble(report.gradient_sup_norm) + ")");
  }
  const Eigen::VectorXd p = Probabilities(design, beta);
  if ((p.array().min(1.0 - p.array()) < kSaturation).any()) {
    throw NumericalError("complete or quasi-complete separation: fitted probabilities reach 0 or 1");
  }
  fit.beta = beta;
  fit.covariance = InvertInformation(Information(design, p));
  fit.log_likelihood = ll;
  fit.mcfadden_r2 = 1.0 - ll / fit.null_log_likelihood;
  return fit;
}

AmeReport AverageMarginalEffects(const LogitFit& fit, const Eigen::MatrixXd& x,
                                 std::span<const RegressorKind> kinds) {
  if (static_cast<Eigen::Index>(kinds.size()) != x.cols()) {
    throw ValidationError("declare one regressor kind per column (" + std::to_string(x.cols()) +
                          " columns, " + std::to_string(kinds.size()) + " kinds)");
  }
  const Eigen::Index offset = fit.has_intercept ? 1 : 0;
  if (x.cols() + offset != fit.beta.size()) {
    throw ValidationError("X does not match the fitted coefficient count");
  }
  const Eigen::MatrixXd design = LogisticDesign(x, fit.has_intercept);
  const auto n = static_cast<double>(design.rows());
  const Eigen::VectorXd p = Probabilities(design, fit.beta);
  AmeReport report;
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    const Eigen::Index col = k + offset;
    AmeEntry e;
    e.name = fit.names[static_cast<std::size_t>(col)];
    e.kind = kinds[static_cast<std::size_t>(k)];
    Eigen::VectorXd jac = Eigen::VectorXd::Zero(fit.beta.size());
    if (e.kind == RegressorKind::kContinuous) {
      const double bk = fit.beta(col);
      for (Eigen::Index i = 0; i < design.rows(); ++i) {
        const double w = p(i) * (1.0 - p(i));
        e.ame += bk * w;
        jac += bk * w * (1.0 - 2.0 * p(i)) * design.row(i).transpose();
        jac(col) += w;
      }
    } else {
      for (Eigen::Index i = 0; i < design.rows(); ++i) {
        const double v = design(i, col);
        if (v != 0.0 && v != 1.0) {
          throw ValidationError("binary regressor " + e.name + " has a value other than 0/1");
        }
        Eigen::VectorXd d1 = design.row(i).transpose();
        Eigen::VectorXd d0 = d1;
        d1(col) = 1.0;
        d0(col) = 0.0;
        const double p1 = Sigmoid(d1.dot(fit.beta));
        const double p0 = Sigmoid(d0.dot(fit.beta));
        e.ame += p1 - p0;
        jac += p1 * (1.0 - p1) * d1 - p0 * (1.0 - p0) * d0;
      }
    }
    e.ame /= n;
    jac /= n;
    e.se = std::sqrt(std::max(0.0, jac.dot(fit.covariance * jac)));
    e.p_value = e.se > 0 ? TwoSidedNormalP(e.ame / e.se) : (e.ame == 0 ? 1.0 : 0.0);
    report.entries.push_back(std::move(e));
  }
  return report;
}

OlsFit FitOls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::vector<std::string> names,
              bool add_intercept) {
  if (x.rows() != y.size()) throw ValidationError("OLS: X and y differ in length");
  if (!x.allFinite() || !y.allFinite()) throw ValidationError("OLS: missing or infinite cells");
  OlsFit fit;
  fit.names = DefaultNames(std::move(names), x.cols(), add_intercept);
  const Eigen::MatrixXd design = LogisticDesign(x, add_intercept);
  const Eigen::Index n = design.rows(), q = design.cols();
  if (n <= q) throw ValidationError("OLS: need more observations than coefficients");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < q) {
    throw NumericalError("OLS design matrix is rank deficient (rank " + std::to_string(qr.rank()) +
                         " of " + std::to_string(q) + ")");
  }
  fit.beta = qr.solve(y);
  fit.num_obs = static_cast<std::size_t>(n);
  const Eigen::VectorXd resid = y - design * fit.beta;
  const double rss = resid.squaredNorm();
  const double tss = add_intercept ? (y.array() - y.mean()).matrix().squaredNorm() : y.squaredNorm();
  fit.r2 = tss > 0 ? 1.0 - rss / tss : (rss == 0 ? 1.0 : 0.0);
  fit.residual_variance = rss / static_cast<double>(n - q);

  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(q, q).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(q, q));
  const Eigen::MatrixXd unpermuted = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  fit.covariance = fit.residual_variance * (perm * unpermuted * perm.transpose());
  fit.se = fit.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
  fit.p_values.resize(q);
  for (Eigen::Index j = 0; j < q; ++j) {
    fit.p_values(j) = fit.se(j) > 0 ? TwoSidedNormalP(fit.beta(j) / fit.se(j)) : 0.0;
  }
  return fit;
}

WaldResult WaldTest(const Eigen::VectorXd& beta, const Eigen::MatrixXd& covariance,
                    const Eigen::VectorXd& c) {
  if (c.size() != beta.size() || covariance.rows() != beta.size() ||
      covariance.cols() != beta.size()) {
    throw ValidationError("Wald test: dimension mismatch");
  }
  const double var = c.dot(covariance * c);
  if (!(var > 0.0)) throw NumericalError("Wald test: constraint has zero or negative variance");
  const double est = c.dot(beta);
  WaldResult r;
  r.statistic = est * est / var;
  r.p_value = ChiSquare1P(r.statistic);
  return r;
}

std::string FormatCoefficientCsv(std::span<const std::string> names, const Eigen::VectorXd& estimate,
                                 const Eigen::VectorXd& se, const Eigen::VectorXd& p_values) {
  std::ostringstream out;
  out << "term,estimate,se,p_value,stars\n";
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    out << names[j] << ',' << FormatFixed(estimate(i), 6) << ',' << FormatFixed(se(i), 6) << ','
        << FormatFixed(p_values(i), 6) << ',' << Stars(p_values(i)) << '\n';
  }
  return out.str();
}

std::string FormatAmeCsv(const AmeReport& report) {
  std::ostringstream out;
  out << "term,kind,ame,se,p_value,stars\n";
  for (const auto& e : report.entries) {
    out << e.name << ',' << (e.kind == RegressorKind::kBinary ? "binary" : "continuous") << ','
        << FormatFixed(e.ame, 6) << ',' << FormatFixed(e.se, 6) << ',' << FormatFixed(e.p_value, 6)
        << ',' << Stars(e.p_value) << '\n';
  }
  return out.str();
}

}  // namespace crowdlift::stats
