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

// Command-line driver for the study pipeline and the scoring service.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"

#include "crowdlift/common/error.h"
#include "crowdlift/common/log.h"
#include "crowdlift/common/strings.h"
#include "crowdlift/pipeline/study.h"
#include "crowdlift/service/http_server.h"
#include "crowdlift/service/service.h"

namespace {

using crowdlift::pipeline::Study;
using crowdlift::pipeline::StudyConfig;
using nlohmann::ordered_json;

std::atomic<bool> g_reload{false};
std::atomic<bool> g_stop{false};

extern "C" void OnSignal(int sig) {
  if (sig == SIGHUP) {
    g_reload = true;
  } else {
    g_stop = true;
  }
}

struct GlobalOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool mock_llm = false;
  std::string out;
  std::optional<int> workers;
  bool verbose = false;
};

StudyConfig LoadConfig(const GlobalOptions& g) {
  if (g.config.empty()) throw crowdlift::ValidationError("--config is required");
  StudyConfig c = StudyConfig::Load(g.config);
  if (g.seed) c.set_seed(*g.seed);
  if (g.mock_llm) c.llm.provider = crowdlift::llm::ProviderKind::kMock;
  if (!g.out.empty()) c.output_dir = g.out;
  if (g.workers) c.workers = *g.workers;
  c.Validate();
  return c;
}

void Print(const ordered_json& j) { std::cout << j.dump(2) << std::endl; }

int Serve(const GlobalOptions& g, const std::string& host, int port, std::string model_path) {
  const StudyConfig c = LoadConfig(g);
  crowdlift::service::ServiceConfig sc;
  sc.model_path = model_path.empty() ? c.output_dir / "model.json" : std::filesystem::path(model_path);
  sc.model_meta_path = sc.model_path.parent_path() / "model_meta.json";
  sc.resources_dir = c.resources_dir;
  sc.acs_path = c.acs_path;
  sc.covid_path = c.covid_path;
  crowdlift::service::ScoringService service(sc, crowdlift::llm::LlmClient::Create(c.llm));
  crowdlift::service::HttpServer server(service);
  const int bound = server.Bind(host, port);
  std::signal(SIGHUP, OnSignal);
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  std::thread serving([&] { server.Serve(); });
  server.WaitUntilReady();
  std::cout << "listening on " << host << ":" << bound << std::endl;
  while (!g_stop) {
    if (g_reload.exchange(false)) {
      crowdlift::LogInfo("reloading model and resources");
      service.Reload();
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  server.Stop();
  serving.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crowdlift: small-business crowdfunding study pipeline and scoring service"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config, "Study configuration (JSON)");
  app.add_option("--seed", g.seed, "Override the study seed");
  app.add_flag("--mock-llm", g.mock_llm, "Use the offline mock LLM provider");
  app.add_option("--out", g.out, "Override the output directory");
  app.add_option("--workers", g.workers, "Worker threads");
  app.add_flag("-v,--verbose", g.verbose, "Log progress messages");

  auto* ingest = app.add_subcommand("ingest", "Load, filter and write the campaign corpus");
  auto* features = app.add_subcommand("features", "Assemble the 168-column feature matrix");
  auto* train = app.add_subcommand("train", "Split by date, tune, train and evaluate");
  auto* ablate = app.add_subcommand("ablate", "Feature-group ablation table");
  auto* explain = app.add_subcommand("explain", "Explanatory logistic regressions");
  auto* simulate = app.add_subcommand("simulate", "Counterfactual augmentation simulation");
  auto* design = app.add_subcommand("design-experiment", "Select campaigns for the experiment");
  auto* analyze = app.add_subcommand("analyze-experiment", "Analyze experiment choice records");
  std::string choices;
  analyze->add_option("--choices", choices, "Choice records (JSON lines)");
  auto* report = app.add_subcommand("report", "Write the artifact manifest");
  bool report_all = false;
  report->add_flag("--all", report_all, "Run every stage before writing the manifest");
  auto* serve = app.add_subcommand("serve", "Run the HTTP scoring service");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string model_path;
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--model", model_path, "Model file (default <out>/model.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  crowdlift::SetLogLevel(g.verbose ? crowdlift::LogLevel::kInfo : crowdlift::LogLevel::kWarning);

  try {
    if (serve->parsed()) return Serve(g, host, port, model_path);
    Study study(LoadConfig(g));
    if (ingest->parsed()) {
      const auto s = study.Ingest();
      Print({{"records_in", s.records_in},
             {"blank_removed", s.blank_removed},
             {"outside_window", s.outside_window},
             {"screened_out", s.screened_out},
             {"records_out", s.records_out},
             {"funded", s.funded}});
    } else if (features->parsed()) {
      const auto m = study.Features();
      Print({{"rows", m.num_rows()}, {"columns", m.num_columns()}});
    } else if (train->parsed()) {
      const auto s = study.Train();
      ordered_json out;
      out["best_params"] = s.best.ToJson();
      for (const auto& row : s.metrics) {
        out["metrics"][row.model][row.split] = {{"precision", row.metrics.precision},
                                                {"recall", row.metrics.recall},
                                                {"f1", row.metrics.f1},
                                                {"accuracy", row.metrics.accuracy}};
      }
      Print(out);
    } else if (ablate->parsed()) {
      ordered_json out = ordered_json::array();
      for (const auto& row : study.Ablate()) {
        out.push_back({{"feature_set", row.feature_set},
                       {"num_features", row.num_features},
                       {"f1", row.test.f1},
                       {"accuracy", row.test.accuracy}});
      }
      Print(out);
    } else if (explain->parsed()) {
      study.Explain();
      Print({{"written", {"table_s10_logit.csv", "table_s10_fit.csv", "acs_pca.csv"}}});
    } else if (simulate->parsed()) {
      const auto r = study.Simulate();
      Print({{"simulated", r.rows.size()},
             {"excluded", r.excluded_ids.size()},
             {"mean_before", r.all.mean_before},
             {"mean_after", r.all.mean_after},
             {"share_improved", r.all.share_improved}});
    } else if (design->parsed()) {
      const auto d = study.Design();
      ordered_json ids = ordered_json::array();
      for (const auto& c : d.campaigns) ids.push_back(c.id);
      Print({{"campaigns", ids}, {"excluded_short", d.excluded_short}});
    } else if (analyze->parsed()) {
      Print(crowdlift::pipeline::AnalysisToJson(study.AnalyzeExperiment(choices)));
    } else if (report->parsed()) {
      Print(report_all ? study.RunAll() : study.Report());
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return crowdlift::ExitCodeFor(e);
  }
}
