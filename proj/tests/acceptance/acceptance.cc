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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "crowdlift/common/csv.h"
#include "crowdlift/common/feature_matrix.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/random.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/context/acs.h"
#include "crowdlift/context/assemble.h"
#include "crowdlift/context/covid.h"
#include "crowdlift/gbdt/metrics.h"
#include "crowdlift/gbdt/params.h"
#include "crowdlift/gbdt/train.h"
#include "crowdlift/gbdt/tune.h"
#include "crowdlift/pipeline/config.h"
#include "crowdlift/pipeline/counterfactual.h"
#include "crowdlift/pipeline/experiment.h"
#include "crowdlift/pipeline/study.h"
#include "crowdlift/stats/agreement.h"
#include "crowdlift/stats/clogit.h"
#include "crowdlift/stats/distributions.h"
#include "crowdlift/stats/pca.h"
#include "crowdlift/stats/regression.h"
#include "crowdlift/textfeat/features.h"
#include "crowdlift/textfeat/resources.h"
#include "crowdlift/textfeat/tokenizer.h"
#include "support/golden_text.h"
#include "support/planted.h"
#include "support/strategy_model.h"

namespace crowdlift {
namespace {

namespace fs = std::filesystem;

// Collects the individual checks of one criterion.
class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void Check(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    ++checks_;
  }
  void Note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return failures_.empty(); }

  std::string Line() const {
    std::ostringstream out;
    out << (passed() ? "PASS " : "FAIL ") << name_ << " (" << checks_ - failures_.size() << "/"
        << checks_ << " checks)";
    for (std::size_t i = 0; i < notes_.size(); ++i) out << (i == 0 ? ": " : "; ") << notes_[i];
    for (const auto& f : failures_) out << "\n     failed: " << f;
    return out.str();
  }

 private:
  std::string name_;
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
  int checks_ = 0;
};

std::string Fixed(double v, int digits = 4) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::string Sci(double v) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(2) << v;
  return out.str();
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const text::TextResources& Resources() {
  static const text::TextResources r = text::TextResources::LoadFromDirectory(CROWDLIFT_RESOURCE_DIR);
  return r;
}

// ------------------------------------------------------------------ gbdt

void GbdtPlantedRecovery(Criterion& c) {
  using testing::Pick;
  using testing::Range;
  const auto data = testing::MakePlanted(2000, 20, 2024);
  const auto tr = Range(0, 1200), va = Range(1200, 1600), te = Range(1600, 2000);
  const auto start = std::chrono::steady_clock::now();
  const auto tuned = gbdt::Tune(gbdt::DefaultGrid(1), data.x.SelectRows(tr), Pick(data.y, tr),
                                data.x.SelectRows(va), Pick(data.y, va), 1);
  const double seconds = Seconds(start);
  const auto ytest = Pick(data.y, te);
  const auto m = gbdt::Evaluate(tuned.best_fit.model, data.x.SelectRows(te), ytest);
  const auto uniform =
      gbdt::ComputeMetrics(ytest, gbdt::UniformBaseline(Pick(data.y, tr)).Predict(te.size()));
  double informative = 0.0;
  const auto imp = tuned.best_fit.model.GainImportance();
  for (int f = 0; f < testing::kPlantedInformative; ++f) informative += imp[f].share;
  c.Check(m.accuracy >= 0.85, "test accuracy " + Fixed(m.accuracy) + " < 0.85");
  c.Check(m.accuracy >= uniform.accuracy + 0.25,
          "accuracy " + Fixed(m.accuracy) + " < uniform " + Fixed(uniform.accuracy) + " + 0.25");
  c.Check(informative >= 0.90, "informative gain share " + Fixed(informative) + " < 0.90");
  c.Check(seconds < 30.0, "tuning took " + Fixed(seconds, 1) + " s");
  c.Note("accuracy " + Fixed(m.accuracy) + " vs uniform " + Fixed(uniform.accuracy));
  c.Note("informative share " + Fixed(informative));
  c.Note(Fixed(seconds, 2) + " s single-threaded");
}

void GbdtDeterminismAndMonotone(Criterion& c) {
  using testing::Pick;
  using testing::Range;
  const auto data = testing::MakePlanted(1000, 12, 99);
  const auto tr = Range(0, 700), va = Range(700, 1000);
  const FeatureMatrix train = data.x.SelectRows(tr), val = data.x.SelectRows(va);
  const auto ytr = Pick(data.y, tr), yva = Pick(data.y, va);
  gbdt::GbdtParams p;
  p.num_rounds = 80;
  p.max_leaves = 15;
  p.min_samples_leaf = 10;
  p.bagging_fraction = 0.8;
  p.feature_fraction = 0.7;
  p.early_stopping_rounds = 0;
  p.seed = 42;
  const std::string a = gbdt::Fit(train, ytr, p, val, yva).model.ToJsonString();
  const std::string b = gbdt::Fit(train, ytr, p, val, yva).model.ToJsonString();
  c.Check(a == b, "two fits with the same seed produced different model files");
  c.Note("model file " + std::to_string(a.size()) + " bytes, identical across fits");

  std::size_t compared = 0;
  const auto base = gbdt::Fit(train, ytr, p).model;
  for (std::size_t f : {0u, 5u, 7u, 11u}) {
    FeatureMatrix t_train = train, t_val = val;
    auto transform = [](double v) { return std::exp(v) * 10.0 + 3.0; };
    for (std::size_t r = 0; r < t_train.num_rows(); ++r) t_train.at(r, f) = transform(t_train.at(r, f));
    for (std::size_t r = 0; r < t_val.num_rows(); ++r) t_val.at(r, f) = transform(t_val.at(r, f));
    const auto changed = gbdt::Fit(t_train, ytr, p).model;
    bool same = true;
    for (std::size_t r = 0; r < val.num_rows(); ++r) {
      same = same && base.PredictProba(val.row(r)) == changed.PredictProba(t_val.row(r));
      ++compared;
    }
    c.Check(same, "exp transform of feature f" + std::to_string(f) + " changed predictions");
  }
  c.Note(std::to_string(compared) + " predictions exactly equal under exp transforms");
}

// ----------------------------------------------------------------- stats

void LogisticRecovery(Criterion& c) {
  const Eigen::Vector4d truth(-0.5, 1.0, -0.7, 0.4);
  int covered = 0;
  double worst_gradient = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    Rng rng(DeriveSeed(31337, static_cast<std::uint64_t>(rep)));
    const int n = 5000;
    Eigen::MatrixXd x(n, 3);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
      x(i, 0) = rng.Normal();
      x(i, 1) = rng.Bernoulli(0.4) ? 1.0 : 0.0;
      x(i, 2) = 2.0 + 1.5 * rng.Normal();
      const double eta = truth(0) + truth(1) * x(i, 0) + truth(2) * x(i, 1) + truth(3) * x(i, 2);
      y[i] = rng.Bernoulli(Sigmoid(eta)) ? 1 : 0;
    }
    const auto fit = stats::FitLogistic(x, y);
    const Eigen::VectorXd se = fit.StandardErrors();
    bool inside = true;
    for (int k = 0; k < 4; ++k) inside = inside && std::abs(fit.beta(k) - truth(k)) <= 3.0 * se(k);
    covered += inside ? 1 : 0;
    const Eigen::VectorXd g = stats::LogisticGradient(stats::LogisticDesign(x, true), y, fit.beta);
    worst_gradient = std::max(worst_gradient, g.cwiseAbs().maxCoeff());
  }
  c.Check(covered >= 95, std::to_string(covered) + "/100 replications within 3 SE");
  c.Check(worst_gradient < 1e-8, "gradient sup-norm " + Sci(worst_gradient));

  Eigen::MatrixXd x(20, 1);
  std::vector<int> y;
  for (int i = 0; i < 20; ++i) {
    x(i, 0) = i < 10 ? 1.0 : 0.0;
    y.push_back(i < 10 ? (i < 8 ? 1 : 0) : (i < 14 ? 1 : 0));
  }
  const auto sat = stats::FitLogistic(x, y);
  const std::vector<stats::RegressorKind> kinds = {stats::RegressorKind::kBinary};
  const double ame = stats::AverageMarginalEffects(sat, x, kinds).entries[0].ame;
  const double beta1 = std::log(4.0) - std::log(0.4 / 0.6);
  c.Check(std::abs(sat.beta(1) - beta1) < 1e-12, "saturated beta1 " + Fixed(sat.beta(1), 6));
  c.Check(std::abs(sat.beta(1) - 1.792) < 5e-4, "saturated beta1 does not round to 1.792");
  c.Check(std::abs(ame - 0.4) < 1e-12, "saturated AME " + Fixed(ame, 12));
  c.Note(std::to_string(covered) + "/100 within 3 SE");
  c.Note("max gradient " + Sci(worst_gradient));
  c.Note("saturated beta1 " + Fixed(sat.beta(1), 3) + ", AME " + Fixed(ame, 3));
}

std::map<std::string, double> LoadTsv(const std::string& path) {
  std::map<std::string, double> out;
  std::ifstream in(path);
  std::string key;
  double value;
  while (in >> key >> value) out[key] = value;
  return out;
}

void DeltaMethod(Criterion& c) {
  const std::string dir = CROWDLIFT_TEST_DATA_DIR;
  const csv::Table t = csv::ReadFile(dir + "/regression_reference_data.csv");
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  Eigen::MatrixXd x(n, 3);
  std::vector<int> y;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = t.rows[static_cast<std::size_t>(i)];
    y.push_back(std::stoi(r[static_cast<std::size_t>(t.Find("y"))]));
    x(i, 0) = ParseDouble(r[static_cast<std::size_t>(t.Find("x1"))]);
    x(i, 1) = ParseDouble(r[static_cast<std::size_t>(t.Find("x2"))]);
    x(i, 2) = ParseDouble(r[static_cast<std::size_t>(t.Find("x3"))]);
  }
  const auto fit = stats::FitLogistic(x, y);
  const std::vector<stats::RegressorKind> kinds = {
      stats::RegressorKind::kContinuous, stats::RegressorKind::kBinary, stats::RegressorKind::kContinuous};
  const auto ame = stats::AverageMarginalEffects(fit, x, kinds);
  const auto boot = LoadTsv(dir + "/ame_bootstrap_expected.tsv");
  c.Check(boot.count("replicates") && boot.at("replicates") == 1000, "bootstrap oracle missing");
  for (int k = 0; k < 3; ++k) {
    const std::string name = "x" + std::to_string(k + 1);
    const double ref = boot.count("bootstrap_se_" + name) ? boot.at("bootstrap_se_" + name) : 0.0;
    const double ratio = ref > 0 ? ame.entries[k].se / ref : 0.0;
    c.Check(std::abs(ratio - 1.0) <= 0.15, name + " delta/bootstrap ratio " + Fixed(ratio, 3));
    c.Note(name + " " + Fixed(ame.entries[k].se, 5) + " vs " + Fixed(ref, 5));
  }
}

void ConditionalLogit(Criterion& c) {
  Rng rng(83);
  std::vector<stats::ChoicePair> pairs;
  const double beta = std::log(0.83 / 0.17);
  for (int i = 0; i < 5000; ++i) {
    const bool aug_first = rng.Bernoulli(0.5);
    const bool chose_aug = rng.Bernoulli(Sigmoid(beta));
    stats::ChoicePair p;
    p.a = {aug_first ? 1.0 : 0.0};
    p.b = {aug_first ? 0.0 : 1.0};
    p.chosen = chose_aug == aug_first ? 0 : 1;
    pairs.push_back(p);
  }
  const auto fit = stats::FitConditionalLogit(pairs, {"augmented"});
  const double prob = Sigmoid(fit.beta(0));
  c.Check(std::abs(prob - 0.83) <= 0.02, "estimated probability " + Fixed(prob));
  c.Note("estimated P(augmented) " + Fixed(prob) + " at n = 5000");

  // Two attributes on mixed comparisons against the differenced logistic.
  std::vector<stats::ChoicePair> mixed;
  const double ba = std::log(0.83 / 0.17), be = std::log(0.61 / 0.39);
  for (int i = 0; i < 3000; ++i) {
    std::vector<double> a = {1.0, 0.0}, b = {0.0, 0.0};
    if (i % 3 == 1) b = {0.0, 1.0};
    if (i % 3 == 2) a = {0.0, 1.0};
    if (rng.Bernoulli(0.5)) std::swap(a, b);
    const double ua = ba * a[0] + be * a[1], ub = ba * b[0] + be * b[1];
    mixed.push_back({a, b, rng.Bernoulli(Sigmoid(ua - ub)) ? 0 : 1});
  }
  const auto cl = stats::FitConditionalLogit(mixed, {"augmented", "extended"});
  stats::LogitOptions opt;
  opt.add_intercept = false;
  const auto logit = stats::FitLogistic(stats::DifferencedAttributes(mixed), stats::ChoseA(mixed),
                                        {"augmented", "extended"}, opt);
  const double beta_gap = (cl.beta - logit.beta).cwiseAbs().maxCoeff();
  const double cov_gap = (cl.covariance - logit.covariance).cwiseAbs().maxCoeff();
  c.Check(beta_gap <= 1e-10, "clogit vs differenced logistic beta gap " + Sci(beta_gap));
  c.Check(cov_gap <= 1e-10, "covariance gap " + Sci(cov_gap));
  c.Note("max gap to differenced logistic " + Sci(std::max(beta_gap, cov_gap)));

  // Mirror-image data: augmented and extended beat the original equally
  // often and tie against each other, so the two estimates coincide.
  std::vector<stats::ChoicePair> mirror;
  for (int i = 0; i < 1000; ++i) mirror.push_back({{1.0, 0.0}, {0.0, 0.0}, i < 830 ? 0 : 1});
  for (int i = 0; i < 1000; ++i) mirror.push_back({{0.0, 1.0}, {0.0, 0.0}, i < 830 ? 0 : 1});
  for (int i = 0; i < 1000; ++i) mirror.push_back({{1.0, 0.0}, {0.0, 1.0}, i % 2});
  const auto eq = stats::FitConditionalLogit(mirror, {"augmented", "extended"});
  const auto wald = stats::WaldTest(eq.beta, eq.covariance, Eigen::Vector2d(1.0, -1.0));
  c.Check(wald.statistic <= 1e-12, "Wald statistic " + Sci(wald.statistic) + " with equal betas");
  c.Note("Wald " + Sci(wald.statistic) + " when beta1 = beta2");
}

void FeatureGolden(Criterion& c) {
  const auto golden =
      testing::LoadGoldenVectors(std::string(CROWDLIFT_TEST_DATA_DIR) + "/lexicon_golden.tsv");
  std::size_t matched = 0, total = 0;
  for (const auto& [name, text] : testing::GoldenFixtures()) {
    const auto v = text::ExtractLexiconFeatures(text, Resources());
    c.Check(v.values.size() == 105, name + " has " + std::to_string(v.values.size()) + " features");
    if (!golden.count(name)) {
      c.Check(false, "no golden vector for " + name);
      continue;
    }
    for (std::size_t i = 0; i < v.values.size(); ++i) {
      const std::string& feature = text::LexiconFeatureNames()[i];
      ++total;
      const auto it = golden.at(name).find(feature);
      const bool ok = it != golden.at(name).end() && it->second == v.values[i];
      matched += ok ? 1 : 0;
      if (!ok) c.Check(false, name + "." + feature + " differs from the frozen value");
    }
  }
  c.Check(matched == total && total == 210, std::to_string(matched) + "/" + std::to_string(total) +
                                                " golden values bit-identical");
  const auto thanks = text::ExtractLexiconFeatures("We thank you.", Resources());
  const double fk = thanks.Get("fk_grade");
  c.Check(std::abs(fk - -2.62) < 1e-12, "fk_grade " + Fixed(fk, 12));
  // Hand count: "we" and "you" are one of three words each.
  c.Check(thanks.Get("dict_we") == 100.0 / 3.0, "dict_we " + Fixed(thanks.Get("dict_we"), 12));
  c.Check(thanks.Get("dict_you") == 100.0 / 3.0, "dict_you " + Fixed(thanks.Get("dict_you"), 12));
  c.Check(thanks.Get("dict_pronoun") == 200.0 / 3.0, "dict_pronoun " + Fixed(thanks.Get("dict_pronoun"), 12));
  c.Note(std::to_string(matched) + "/" + std::to_string(total) + " values bit-identical");
  c.Note("fk_grade " + Fixed(fk, 2));
}

void StatisticalUtilities(Criterion& c) {
  const std::vector<int> a = {1, 1, 0, 0}, b = {1, 0, 0, 0};
  const auto kappa = stats::CohenKappa(a, b);
  c.Check(kappa.has_value() && *kappa == 0.5, "kappa hand case");
  const std::vector<double> s = {3, 1, 4, 1, 5, 9, 2, 6};
  c.Check(stats::KsTest(s, s).statistic == 0.0, "KS identical samples D != 0");
  const std::vector<double> lo = {1, 2, 3, 4}, hi = {5, 6, 7, 8};
  c.Check(stats::KsTest(lo, hi).statistic == 1.0, "KS disjoint supports D != 1");
  Eigen::MatrixXd x(5, 2);
  x << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10;
  const double ratio = stats::FitPca(x, 2).explained_ratio(0);
  c.Check(std::abs(ratio - 1.0) < 1e-12, "PCA collinear ratio " + Fixed(ratio, 12));
  int passes = 0;
  for (int rep = 0; rep < 200; ++rep) {
    Rng rng(DeriveSeed(77, static_cast<std::uint64_t>(rep)));
    std::vector<double> u(500), v(500);
    for (auto& e : u) e = rng.Normal();
    for (auto& e : v) e = rng.Normal();
    passes += stats::KsTest(u, v).p_value > 0.10 ? 1 : 0;
  }
  // Nominal pass rate 0.90; 170 of 200 is about 2.4 binomial SDs below it.
  c.Check(passes >= 170, "null KS passes " + std::to_string(passes) + "/200 at alpha 0.10");
  c.Note("kappa " + Fixed(*kappa, 1));
  c.Note("PCA ratio " + Fixed(ratio, 6));
  c.Note("null KS pass rate " + Fixed(passes / 200.0, 3) + " (nominal 0.90)");
}

// -------------------------------------------------------- counterfactual

struct StudyRun {
  double seconds = 0.0;
  pipeline::TrainSummary train;
  std::vector<pipeline::AblationRow> ablation;
  pipeline::SimulationReport simulation;
  pipeline::ExperimentDesign design;
};

StudyRun RunStudy(const fs::path& out) {
  pipeline::StudyConfig config =
      pipeline::StudyConfig::Load(fs::path(CROWDLIFT_DATA_DIR) / "minicorpus" / "study.json");
  config.output_dir = out;
  fs::remove_all(out);
  const auto start = std::chrono::steady_clock::now();
  pipeline::Study study(config);
  StudyRun run;
  study.Ingest();
  study.Features();
  run.train = study.Train();
  run.ablation = study.Ablate();
  study.Explain();
  run.simulation = study.Simulate();
  run.design = study.Design();
  study.AnalyzeExperiment();
  study.Report();
  run.seconds = Seconds(start);
  return run;
}

void CounterfactualEngine(Criterion& c, const StudyRun& e2e) {
  auto client = testing::MakeMockClient();
  context::AcsTable acs;
  context::AcsRow row;
  row.fill(4.0);
  acs.Add("Austin", "TX", row);
  context::CovidSeries covid;
  for (int d = 0; d < 120; ++d) {
    covid.Add("TX", Date(2020, 3, 1).AddDays(d), 25.0);
    covid.Add("US", Date(2020, 3, 1).AddDays(d), 900.0);
  }
  std::vector<corpus::CampaignRecord> records;
  std::vector<std::string> ids;
  for (int i = 0; i < 30; ++i) {
    corpus::CampaignRecord r;
    r.id = "cf" + std::to_string(i);
    r.description = testing::PlainDescription(5 + i % 6, i);
    r.created_date = Date(2020, 4, 15).AddDays(i);
    r.city = "Austin";
    r.state = "TX";
    r.goal_amount = 2000.0 + 100.0 * i;
    r.funded = i % 3 == 0;
    records.push_back(r);
    ids.push_back(r.id);
  }
  const FeatureMatrix m = context::AssembleFeatureMatrix(records, Resources(), *client, acs, covid, 1);
  const auto report = pipeline::RunCounterfactual(ids, records, m, testing::MakeStrategyModel(), *client,
                                                  Resources(), pipeline::AugmentMode::kCorrectThree, 2);
  const double expected = Sigmoid(0.5) - Sigmoid(-1.0);
  double worst = 0.0;
  for (const auto& r : report.rows) worst = std::max(worst, std::abs(r.lift - expected));
  c.Check(report.rows.size() == ids.size(), "rows simulated " + std::to_string(report.rows.size()));
  c.Check(worst <= 1e-12, "max |lift - 0.353| " + Sci(worst));
  c.Check(report.all.share_improved == 1.0, "share improved " + Fixed(report.all.share_improved));
  c.Note("lift " + Fixed(expected, 4) + " on " + std::to_string(report.rows.size()) +
         " campaigns, max error " + Sci(worst));
  c.Note("share improved " + Fixed(100 * report.all.share_improved, 1) + "%");

  // Isolation: the 52 non-textual cells of every counterfactual row match
  // the original row bit for bit.
  std::size_t identical = 0;
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    const auto original = m.row(r);
    const auto cf = pipeline::CounterfactualRow(original, report.rows[r].augmented_text, Resources(), *client);
    const std::size_t tail = context::kTotalFeatureCount - context::kTextualFeatureCount;
    identical += std::memcmp(cf.data() + context::kTextualFeatureCount,
                             original.data() + context::kTextualFeatureCount, tail * sizeof(double)) == 0
                     ? 1
                     : 0;
  }
  c.Check(identical == m.num_rows(), "non-textual columns changed in " +
                                         std::to_string(m.num_rows() - identical) + " rows");
  c.Note("non-textual columns bit-identical in " + std::to_string(identical) + "/" +
         std::to_string(m.num_rows()) + " rows");

  // Robustness regression on the planted mini-corpus simulation with the
  // trained model.
  bool found = false;
  for (const auto& t : e2e.simulation.robustness) {
    if (t.model != "all" || !t.fit) continue;
    for (std::size_t k = 0; k < t.fit->names.size(); ++k) {
      if (t.fit->names[k] != "augmentation") continue;
      found = true;
      const double est = t.fit->beta[static_cast<Eigen::Index>(k)];
      const double p = t.fit->p_values[static_cast<Eigen::Index>(k)];
      c.Check(est > 0 && p < 0.01, "augmentation coefficient " + Fixed(est) + " p " + Sci(p));
      c.Note("robustness augmentation " + Fixed(est) + " (p " + Sci(p) + ", n " +
             std::to_string(t.fit->num_obs) + ")");
    }
  }
  c.Check(found, "no augmentation term in the robustness regression");
}

void DesignInvariants(Criterion& c, const StudyRun& first, const StudyRun& second) {
  const auto& d = first.design;
  std::map<std::string, int> per_stratum;
  int funded = 0;
  std::size_t shortest = 1u << 30;
  for (const auto& camp : d.campaigns) {
    ++per_stratum[camp.stratum];
    funded += camp.funded ? 1 : 0;
    shortest = std::min(shortest, camp.words_original);
  }
  c.Check(d.campaigns.size() == 16, std::to_string(d.campaigns.size()) + " campaigns");
  c.Check(funded == 8, std::to_string(funded) + " funded campaigns");
  c.Check(per_stratum.size() == 8, std::to_string(per_stratum.size()) + " strata");
  for (const auto& [s, n] : per_stratum) c.Check(n == 2, s + " has " + std::to_string(n));
  c.Check(shortest > 180, "shortest original " + std::to_string(shortest) + " words");
  c.Check(pipeline::DesignToJson(d).dump() == pipeline::DesignToJson(second.design).dump(),
          "design differs between runs with the same seed");
  c.Note("16 = " + std::to_string(funded) + " funded + " + std::to_string(16 - funded) + " unfunded");
  c.Note("shortest original " + std::to_string(shortest) + " words");
  c.Note(std::to_string(d.excluded_short) + " short originals excluded");
}

std::map<std::string, std::string> ReadDir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) out[e.path().filename().string()] = ReadFileToString(e.path().string());
  }
  return out;
}

void EndToEnd(Criterion& c, const StudyRun& first, const StudyRun& second, const fs::path& a,
              const fs::path& b) {
  c.Check(first.seconds < 120.0, "first run took " + Fixed(first.seconds, 1) + " s");
  c.Check(second.seconds < 120.0, "second run took " + Fixed(second.seconds, 1) + " s");
  const auto files_a = ReadDir(a), files_b = ReadDir(b);
  std::size_t same = 0;
  for (const auto& [name, body] : files_a) {
    const auto it = files_b.find(name);
    same += it != files_b.end() && it->second == body ? 1 : 0;
  }
  c.Check(files_a.size() == files_b.size() && same == files_a.size(),
          std::to_string(same) + "/" + std::to_string(files_a.size()) + " files byte-identical");
  std::size_t expected_files = pipeline::artifact::All().size() + 1;
  c.Check(files_a.size() == expected_files, std::to_string(files_a.size()) + " files written, expected " +
                                                std::to_string(expected_files));

  double non_textual = -1, with_gpt = -1;
  for (const auto& r : first.ablation) {
    if (r.feature_set == "non_textual") non_textual = r.test.f1;
    if (r.feature_set == "non_textual+gpt") with_gpt = r.test.f1;
  }
  c.Check(with_gpt > non_textual, "+GPT F1 " + Fixed(with_gpt) + " <= non-textual " + Fixed(non_textual));

  double model_acc = -1, uniform_acc = -1;
  for (const auto& r : first.train.metrics) {
    if (r.split != "test") continue;
    if (r.model == "gbdt") model_acc = r.metrics.accuracy;
    if (r.model == "uniform_baseline") uniform_acc = r.metrics.accuracy;
  }
  c.Check(model_acc >= uniform_acc + 0.15,
          "test accuracy " + Fixed(model_acc) + " < uniform " + Fixed(uniform_acc) + " + 0.15");
  c.Note("runs " + Fixed(first.seconds, 2) + " s and " + Fixed(second.seconds, 2) + " s");
  c.Note(std::to_string(same) + "/" + std::to_string(files_a.size()) + " files byte-identical");
  c.Note("ablation F1 +GPT " + Fixed(with_gpt) + " vs non-textual " + Fixed(non_textual));
  c.Note("test accuracy " + Fixed(model_acc) + " vs uniform " + Fixed(uniform_acc));
}

int Main() {
  SetLogLevel(LogLevel::kError);
  std::vector<Criterion> results;
  auto run = [&](const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion c(name);
    try {
      body(c);
    } catch (const std::exception& e) {
      c.Check(false, std::string("threw: ") + e.what());
    }
    std::cout << c.Line() << std::endl;
    results.push_back(std::move(c));
  };

  const fs::path base = fs::temp_directory_path() / "crowdlift_acceptance";
  const fs::path out_a = base / "run_a", out_b = base / "run_b";
  StudyRun first, second;
  std::string study_error;
  try {
    first = RunStudy(out_a);
    second = RunStudy(out_b);
  } catch (const std::exception& e) {
    study_error = e.what();
  }
  auto needs_study = [&](Criterion& c) {
    c.Check(study_error.empty(), "mini-corpus study failed: " + study_error);
    return study_error.empty();
  };

  run("GBDT planted-signal recovery", GbdtPlantedRecovery);
  run("GBDT determinism and monotone invariance", GbdtDeterminismAndMonotone);
  run("Logistic recovery", LogisticRecovery);
  run("Delta-method AME standard errors vs bootstrap", DeltaMethod);
  run("Conditional logit", ConditionalLogit);
  run("Feature extraction golden suite", FeatureGolden);
  run("Counterfactual engine", [&](Criterion& c) {
    if (needs_study(c)) CounterfactualEngine(c, first);
  });
  run("Experiment design invariants", [&](Criterion& c) {
    if (needs_study(c)) DesignInvariants(c, first, second);
  });
  run("Statistical utilities", StatisticalUtilities);
  run("End-to-end mini-corpus", [&](Criterion& c) {
    if (needs_study(c)) EndToEnd(c, first, second, out_a, out_b);
  });

  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& c) { return c.passed(); });
  std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
  return passed == static_cast<long>(results.size()) ? 0 : 1;
}

}  // namespace
}  // namespace crowdlift

int main() { return crowdlift::Main(); }
