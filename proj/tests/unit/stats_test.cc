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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <string>

#include "crowdlift/common/csv.h"
#include "crowdlift/common/error.h"
#include "crowdlift/common/random.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/stats/agreement.h"
#include "crowdlift/stats/clogit.h"
#include "crowdlift/stats/distributions.h"
#include "crowdlift/stats/pca.h"
#include "crowdlift/stats/regression.h"

namespace crowdlift::stats {
namespace {

const std::string kData = CROWDLIFT_TEST_DATA_DIR;

std::map<std::string, double> LoadExpected() {
  std::map<std::string, double> out;
  std::ifstream in(kData + "/regression_reference_expected.tsv");
  std::string key;
  double value;
  while (in >> key >> value) out[key] = value;
  return out;
}

struct ReferenceData {
  Eigen::MatrixXd x;
  std::vector<int> y;
  Eigen::VectorXd yc;
};

ReferenceData LoadReference() {
  const csv::Table t = csv::ReadFile(kData + "/regression_reference_data.csv");
  ReferenceData d;
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  d.x.resize(n, 3);
  d.yc.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = t.rows[static_cast<std::size_t>(i)];
    d.y.push_back(std::stoi(r[t.Find("y")]));
    d.yc(i) = ParseDouble(r[t.Find("yc")]);
    d.x(i, 0) = ParseDouble(r[t.Find("x1")]);
    d.x(i, 1) = ParseDouble(r[t.Find("x2")]);
    d.x(i, 2) = ParseDouble(r[t.Find("x3")]);
  }
  return d;
}

const std::vector<RegressorKind> kRefKinds = {RegressorKind::kContinuous, RegressorKind::kBinary,
                                              RegressorKind::kContinuous};

TEST(LogisticTest, MatchesStatsmodelsReference) {
  const auto d = LoadReference();
  const auto e = LoadExpected();
  const LogitFit fit = FitLogistic(d.x, d.y, {"x1", "x2", "x3"});
  const Eigen::VectorXd se = fit.StandardErrors();
  const char* names[] = {"const", "x1", "x2", "x3"};
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(fit.beta(j), e.at(std::string("logit_beta_") + names[j]), 1e-8) << names[j];
    EXPECT_NEAR(se(j), e.at(std::string("logit_se_") + names[j]), 1e-8) << names[j];
  }
  EXPECT_NEAR(fit.log_likelihood, e.at("logit_llf"), 1e-8);
  EXPECT_NEAR(fit.null_log_likelihood, e.at("logit_llnull"), 1e-8);
  EXPECT_NEAR(fit.mcfadden_r2, e.at("logit_prsquared"), 1e-10);
  EXPECT_LT(fit.convergence.gradient_sup_norm, 1e-8);
  EXPECT_EQ(fit.names.front(), "(intercept)");

  const AmeReport ame = AverageMarginalEffects(fit, d.x, kRefKinds);
  for (int k = 0; k < 3; ++k) {
    const std::string n = names[k + 1];
    EXPECT_NEAR(ame.entries[k].ame, e.at("ame_" + n), 1e-8) << n;
    EXPECT_NEAR(ame.entries[k].se, e.at("ame_se_" + n), 1e-7) << n;
  }
}

TEST(LogisticTest, InterceptOnlyEvenOutcome) {
  const Eigen::MatrixXd x(10, 0);
  const std::vector<int> y = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  const LogitFit fit = FitLogistic(x, y);
  EXPECT_NEAR(fit.beta(0), 0.0, 1e-15);
  EXPECT_NEAR(fit.mcfadden_r2, 0.0, 1e-15);
}

TEST(LogisticTest, SaturatedBinaryClosedForm) {
  // P(y|x=1) = 0.8, P(y|x=0) = 0.4 over 10 rows per cell.
  Eigen::MatrixXd x(20, 1);
  std::vector<int> y;
  for (int i = 0; i < 20; ++i) {
    x(i, 0) = i < 10 ? 1.0 : 0.0;
    y.push_back(i < 10 ? (i < 8 ? 1 : 0) : (i < 14 ? 1 : 0));
  }
  const LogitFit fit = FitLogistic(x, y);
  EXPECT_NEAR(fit.beta(0), std::log(0.4 / 0.6), 1e-12);
  EXPECT_NEAR(fit.beta(1), std::log(0.8 / 0.2) - std::log(0.4 / 0.6), 1e-12);
  EXPECT_NEAR(fit.beta(1), 1.792, 5e-4);
  const std::vector<RegressorKind> kinds = {RegressorKind::kBinary};
  const AmeReport ame = AverageMarginalEffects(fit, x, kinds);
  EXPECT_NEAR(ame.entries[0].ame, 0.4, 1e-12);
  EXPECT_GT(ame.entries[0].se, 0.0);
}

TEST(LogisticTest, SeparationAndSingularityAreErrors) {
  Eigen::MatrixXd x(8, 1);
  x << 1, 2, 3, 4, 5, 6, 7, 8;
  EXPECT_THROW(FitLogistic(x, std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1}), NumericalError);
  EXPECT_THROW(FitLogistic(x, std::vector<int>{1, 1, 1, 1, 1, 1, 1, 1}), NumericalError);
  Eigen::MatrixXd dup(8, 2);
  dup.col(0) = x.col(0);
  dup.col(1) = x.col(0);
  EXPECT_THROW(FitLogistic(dup, std::vector<int>{0, 1, 0, 1, 1, 0, 1, 0}), NumericalError);
  EXPECT_THROW(FitLogistic(x, std::vector<int>{0, 1}), ValidationError);
  EXPECT_THROW(FitLogistic(x, std::vector<int>{0, 1, 2, 0, 1, 0, 1, 0}), ValidationError);
}

TEST(LogisticTest, AnalyticGradientMatchesFiniteDifferences) {
  const auto d = LoadReference();
  const Eigen::MatrixXd design = LogisticDesign(d.x, true);
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd beta(4);
    for (int j = 0; j < 4; ++j) beta(j) = rng.Normal() * 0.5;
    const Eigen::VectorXd g = LogisticGradient(design, d.y, beta);
    for (int j = 0; j < 4; ++j) {
      const double h = 1e-5;
      Eigen::VectorXd up = beta, down = beta;
      up(j) += h;
      down(j) -= h;
      const double fd =
          (LogisticLogLikelihood(design, d.y, up) - LogisticLogLikelihood(design, d.y, down)) / (2 * h);
      EXPECT_NEAR(fd, g(j), 1e-6 * std::max(1.0, std::fabs(g(j))));
    }
  }
}

TEST(LogisticTest, CovarianceIsSymmetricPositiveDefinite) {
  const auto d = LoadReference();
  const LogitFit fit = FitLogistic(d.x, d.y);
  EXPECT_TRUE(fit.covariance.isApprox(fit.covariance.transpose(), 0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fit.covariance);
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
}

TEST(AmeTest, MatchesBruteForceOracles) {
  const auto d = LoadReference();
  const LogitFit fit = FitLogistic(d.x, d.y);
  const AmeReport ame = AverageMarginalEffects(fit, d.x, kRefKinds);
  const auto n = static_cast<double>(d.x.rows());
  // Binary: flip the column for every row, same arithmetic path.
  double flip = 0.0;
  for (Eigen::Index i = 0; i < d.x.rows(); ++i) {
    Eigen::VectorXd r1(4), r0(4);
    r1 << 1.0, d.x(i, 0), 1.0, d.x(i, 2);
    r0 << 1.0, d.x(i, 0), 0.0, d.x(i, 2);
    flip += Sigmoid(r1.dot(fit.beta)) - Sigmoid(r0.dot(fit.beta));
  }
  EXPECT_EQ(ame.entries[1].ame, flip / n);
  // Continuous: central finite difference of the mean predicted probability.
  for (int k : {0, 2}) {
    const double h = 1e-6;
    Eigen::MatrixXd up = d.x, down = d.x;
    up.col(k).array() += h;
    down.col(k).array() -= h;
    const Eigen::MatrixXd du = LogisticDesign(up, true), dd = LogisticDesign(down, true);
    double fd = 0.0;
    for (Eigen::Index i = 0; i < d.x.rows(); ++i) {
      fd += Sigmoid(du.row(i).dot(fit.beta)) - Sigmoid(dd.row(i).dot(fit.beta));
    }
    fd /= 2 * h * n;
    EXPECT_NEAR(ame.entries[k].ame, fd, 1e-8);
  }
}

TEST(AmeTest, ZeroCoefficientAndUndeclaredKind) {
  LogitFit fit;
  fit.names = {"(intercept)", "x"};
  fit.beta = Eigen::Vector2d(0.3, 0.0);
  fit.covariance = Eigen::Matrix2d::Identity() * 0.01;
  Eigen::MatrixXd x(3, 1);
  x << 0.5, 1.5, -2.0;
  const std::vector<RegressorKind> kinds = {RegressorKind::kContinuous};
  EXPECT_EQ(AverageMarginalEffects(fit, x, kinds).entries[0].ame, 0.0);
  EXPECT_THROW(AverageMarginalEffects(fit, x, {}), ValidationError);
  const std::vector<RegressorKind> binary = {RegressorKind::kBinary};
  EXPECT_THROW(AverageMarginalEffects(fit, x, binary), ValidationError);
}

TEST(OlsTest, MatchesStatsmodelsReference) {
  const auto d = LoadReference();
  const auto e = LoadExpected();
  const OlsFit fit = FitOls(d.x, d.yc);
  const char* names[] = {"const", "x1", "x2", "x3"};
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(fit.beta(j), e.at(std::string("ols_beta_") + names[j]), 1e-10);
    EXPECT_NEAR(fit.se(j), e.at(std::string("ols_se_") + names[j]), 1e-10);
  }
  EXPECT_NEAR(fit.r2, e.at("ols_r2"), 1e-12);
}

TEST(OlsTest, ExactLineAndNoisyLine) {
  Eigen::MatrixXd x(5, 1);
  x << 1, 2, 3, 4, 5;
  const OlsFit exact = FitOls(x, 2.0 * x.col(0), {"x"});
  EXPECT_NEAR(exact.beta(1), 2.0, 1e-12);
  EXPECT_NEAR(exact.beta(0), 0.0, 1e-12);
  EXPECT_NEAR(exact.r2, 1.0, 1e-12);
  EXPECT_NEAR(exact.residual_variance, 0.0, 1e-20);

  Rng rng(9);
  Eigen::MatrixXd xn(1000, 1);
  Eigen::VectorXd yn(1000);
  for (int i = 0; i < 1000; ++i) {
    xn(i, 0) = rng.Uniform() * 10.0;
    yn(i) = xn(i, 0) + 0.1 * rng.Normal();
  }
  const OlsFit noisy = FitOls(xn, yn);
  EXPECT_LT(std::fabs(noisy.beta(1) - 1.0), 3.0 * noisy.se(1));
}

TEST(OlsTest, DuplicatedColumnIsRankError) {
  Eigen::MatrixXd x(6, 2);
  x << 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6;
  Eigen::VectorXd y(6);
  y << 1, 3, 2, 5, 4, 6;
  EXPECT_THROW(FitOls(x, y), NumericalError);
}

std::vector<ChoicePair> LoadReferencePairs() {
  const csv::Table t = csv::ReadFile(kData + "/clogit_reference_data.csv");
  std::vector<ChoicePair> pairs;
  for (std::size_t i = 0; i + 1 < t.rows.size(); i += 2) {
    const auto& a = t.rows[i];
    const auto& b = t.rows[i + 1];
    ChoicePair p;
    p.a = {ParseDouble(a[t.Find("aug")]), ParseDouble(a[t.Find("ext")])};
    p.b = {ParseDouble(b[t.Find("aug")]), ParseDouble(b[t.Find("ext")])};
    p.chosen = a[t.Find("chosen")] == "1" ? 0 : 1;
    pairs.push_back(p);
  }
  return pairs;
}

TEST(ClogitTest, MatchesStatsmodelsConditionalLogit) {
  const auto e = LoadExpected();
  const auto pairs = LoadReferencePairs();
  const ClogitFit fit = FitConditionalLogit(pairs, {"aug", "ext"});
  EXPECT_NEAR(fit.beta(0), e.at("clogit_beta_aug"), 1e-6);
  EXPECT_NEAR(fit.beta(1), e.at("clogit_beta_ext"), 1e-6);
  EXPECT_NEAR(fit.StandardErrors()(0), e.at("clogit_se_aug"), 1e-6);
  EXPECT_NEAR(fit.StandardErrors()(1), e.at("clogit_se_ext"), 1e-6);
  for (const auto& pp : fit.pair_probabilities) EXPECT_DOUBLE_EQ(pp[0] + pp[1], 1.0);
}

TEST(ClogitTest, EqualsDifferencedLogistic) {
  const auto pairs = LoadReferencePairs();
  const ClogitFit fit = FitConditionalLogit(pairs, {"aug", "ext"});
  LogitOptions opt;
  opt.add_intercept = false;
  const LogitFit logit = FitLogistic(DifferencedAttributes(pairs), ChoseA(pairs), {"aug", "ext"}, opt);
  EXPECT_LE((fit.beta - logit.beta).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((fit.covariance - logit.covariance).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ClogitTest, EightyThreeOfHundredClosedForm) {
  std::vector<ChoicePair> pairs;
  for (int i = 0; i < 100; ++i) pairs.push_back({{1.0}, {0.0}, i < 83 ? 0 : 1});
  const ClogitFit fit = FitConditionalLogit(pairs, {"aug"});
  EXPECT_NEAR(fit.beta(0), std::log(83.0 / 17.0), 1e-10);
  EXPECT_NEAR(fit.beta(0), 1.586, 5e-4);
  EXPECT_NEAR(fit.pair_probabilities[0][0], 0.83, 1e-10);
  EXPECT_NEAR(fit.probability_contrast(0), 0.33, 1e-10);
}

TEST(ClogitTest, EvenChoicesAndUnidentified) {
  std::vector<ChoicePair> pairs;
  for (int i = 0; i < 50; ++i) pairs.push_back({{1.0, 0.0}, {0.0, 1.0}, i % 2});
  for (int i = 0; i < 50; ++i) pairs.push_back({{1.0, 0.0}, {0.0, 0.0}, i % 2});
  const ClogitFit fit = FitConditionalLogit(pairs, {"aug", "ext"});
  EXPECT_NEAR(fit.beta(0), 0.0, 1e-12);
  EXPECT_NEAR(fit.beta(1), 0.0, 1e-12);
  const auto wald = WaldTest(fit.beta, fit.covariance, Eigen::Vector2d(1.0, -1.0));
  EXPECT_NEAR(wald.statistic, 0.0, 1e-20);
  EXPECT_NEAR(wald.p_value, 1.0, 1e-9);

  std::vector<ChoicePair> flat = {{{1.0}, {1.0}, 0}, {{0.0}, {0.0}, 1}};
  EXPECT_THROW(FitConditionalLogit(flat, {"aug"}), ValidationError);
  std::vector<ChoicePair> ragged = {{{1.0}, {1.0, 0.0}, 0}};
  EXPECT_THROW(FitConditionalLogit(ragged, {"aug"}), ValidationError);
  std::vector<ChoicePair> bad_choice = {{{1.0}, {0.0}, 2}};
  EXPECT_THROW(FitConditionalLogit(bad_choice, {"aug"}), ValidationError);
}

TEST(WaldTest, HandCaseAndErrors) {
  const auto r = WaldTest(Eigen::Vector2d(2.0, 0.0), Eigen::Matrix2d::Identity(), Eigen::Vector2d(1.0, -1.0));
  EXPECT_DOUBLE_EQ(r.statistic, 2.0);
  EXPECT_NEAR(r.p_value, 0.15729920705028513, 1e-12);
  EXPECT_THROW(WaldTest(Eigen::Vector2d(1.0, 1.0), Eigen::Matrix2d::Zero(), Eigen::Vector2d(1.0, -1.0)),
               NumericalError);
  const auto eq = WaldTest(Eigen::Vector2d(0.7, 0.7), Eigen::Matrix2d::Identity(), Eigen::Vector2d(1.0, -1.0));
  EXPECT_EQ(eq.statistic, 0.0);
  EXPECT_EQ(eq.p_value, 1.0);
}

TEST(PcaTest, CollinearDataHasOneComponent) {
  Eigen::MatrixXd x(5, 2);
  x << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10;
  const PcaModel m = FitPca(x, 2);
  EXPECT_NEAR(m.explained_ratio(0), 1.0, 1e-12);
  EXPECT_NEAR(m.explained_ratio(1), 0.0, 1e-12);
  EXPECT_GT(m.loadings.col(0).maxCoeff(), 0.0);
}

TEST(PcaTest, IsotropicDataSplitsEvenly) {
  Rng rng(12);
  Eigen::MatrixXd x(20000, 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    x(i, 0) = rng.Normal();
    x(i, 1) = rng.Normal();
  }
  const PcaModel m = FitPca(x, 2);
  EXPECT_NEAR(m.explained_ratio(0), 0.5, 0.05);
  EXPECT_NEAR(m.explained_ratio(1), 0.5, 0.05);
}

TEST(PcaTest, FullRankReconstructionAndOrdering) {
  Rng rng(13);
  Eigen::MatrixXd x(200, 5);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double f = rng.Normal();
    for (Eigen::Index j = 0; j < 5; ++j) x(i, j) = f * (j + 1) + rng.Normal() * (j + 0.5) + 10.0 * j;
  }
  const PcaModel m = FitPca(x, 5);
  EXPECT_NEAR(m.explained_ratio.sum(), 1.0, 1e-12);
  for (int c = 1; c < 5; ++c) EXPECT_LE(m.explained_ratio(c), m.explained_ratio(c - 1));
  for (int c = 0; c < 5; ++c) {
    Eigen::Index arg;
    m.loadings.col(c).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(m.loadings(arg, c), 0.0);
  }
  const Eigen::MatrixXd z = m.Standardize(x);
  const Eigen::MatrixXd back = m.Transform(x) * m.loadings.transpose();
  EXPECT_LT((back - z).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(PcaTest, DropsConstantColumnsAndChecksK) {
  Eigen::MatrixXd x(4, 3);
  x << 1, 7, 2, 2, 7, 1, 3, 7, 5, 4, 7, 3;
  const PcaModel m = FitPca(x, 2, {"a", "const", "c"});
  EXPECT_EQ(m.dropped, std::vector<std::string>{"const"});
  EXPECT_EQ(m.kept_columns, (std::vector<std::size_t>{0, 2}));
  EXPECT_THROW(FitPca(x, 3), ValidationError);
  EXPECT_THROW(FitPca(x.topRows(1), 1), ValidationError);
}

TEST(KappaTest, HandCasesAndSymmetry) {
  const std::vector<int> a = {1, 1, 0, 0}, b = {1, 0, 0, 0};
  EXPECT_DOUBLE_EQ(*CohenKappa(a, b), 0.5);
  EXPECT_DOUBLE_EQ(*CohenKappa(b, a), 0.5);
  EXPECT_DOUBLE_EQ(*CohenKappa(a, a), 1.0);
  const std::vector<int> ones = {1, 1, 1};
  EXPECT_DOUBLE_EQ(*CohenKappa(ones, ones), 1.0);
  EXPECT_THROW(CohenKappa(a, ones), ValidationError);
}

TEST(KappaTest, IndependentCoinFlipsNearZero) {
  Rng rng(21);
  std::vector<int> a, b;
  for (int i = 0; i < 10000; ++i) {
    a.push_back(rng.Bernoulli(0.5));
    b.push_back(rng.Bernoulli(0.5));
  }
  EXPECT_LT(std::fabs(*CohenKappa(a, b)), 0.05);
}

TEST(KsTest, IdenticalAndDisjointSamples) {
  const std::vector<double> s = {3, 1, 4, 1, 5, 9, 2, 6};
  EXPECT_EQ(KsTest(s, s).statistic, 0.0);
  const std::vector<double> lo = {1, 2, 3, 4}, hi = {5, 6, 7, 8};
  EXPECT_EQ(KsTest(lo, hi).statistic, 1.0);
  EXPECT_EQ(KsTest(hi, lo).statistic, 1.0);
  EXPECT_EQ(KsTest(lo, hi).p_value, KsTest(hi, lo).p_value);
}

TEST(KsTest, NullSimulationPassRate) {
  int passes = 0;
  for (int rep = 0; rep < 100; ++rep) {
    Rng rng(DeriveSeed(77, rep));
    std::vector<double> a(500), b(500);
    for (auto& v : a) v = rng.Normal();
    for (auto& v : b) v = rng.Normal();
    passes += KsTest(a, b).p_value > 0.10 ? 1 : 0;
  }
  EXPECT_GE(passes, 85);
}

}  // namespace
}  // namespace crowdlift::stats
