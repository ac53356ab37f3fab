// Copyright 2026 The Scaffold Authors
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

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "scaffold/config.hpp"
#include "scaffold/error.hpp"
#include "scaffold/event_log.hpp"
#include "scaffold/local_corpus.hpp"
#include "scaffold/outline.hpp"
#include "scaffold/report.hpp"
#include "scaffold/service.hpp"
#include "scaffold/sim.hpp"

namespace fs = std::filesystem;
using namespace scaffold;

namespace {

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

int serve(const std::optional<fs::path>& config_path) {
  const fs::path path = resolve_config_path(config_path);
  Service service(load_service_config(path));
  const int port = service.bind();
  std::cout << "listening on " << service.config().host << ":" << port << " ("
            << service.recovered() << " sessions recovered)" << std::endl;
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.listen();
  g_service = nullptr;
  return 0;
}

int index_corpus(const fs::path& corpus, const fs::path& out) {
  const LocalCorpus c = LocalCorpus::load(corpus);
  c.save_index(out);
  std::cout << c.documents().size() << " documents, " << c.num_terms() << " terms" << std::endl;
  return 0;
}

int synth_corpus(const fs::path& outlines, const fs::path& out, std::uint64_t seed) {
  CorpusSynthesisOptions options;
  options.seed = seed;
  const auto docs = synthesize_corpus(load_outline_set(outlines), options);
  fs::create_directories(out);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "doc-%04zu.yaml", i + 1);
    std::ofstream f(out / name, std::ios::binary | std::ios::trunc);
    f << serialize_corpus_document(docs[i]);
    if (!f) throw ConfigError("cannot write " + (out / name).string());
  }
  std::cout << docs.size() << " documents written to " << out.string() << std::endl;
  return 0;
}

struct SimulateArgs {
  std::string profile = "freeform";
  std::string topic;
  std::string strategy = "control";
  std::uint64_t seed = 1;
  fs::path out;
  fs::path outlines = "fixtures/outlines";
  fs::path attention = "fixtures/attention/sports.yaml";
  std::optional<fs::path> corpus;
};

int simulate(const SimulateArgs& a) {
  const auto kind = parse_agent(a.profile);
  if (!kind) throw ValidationError("unknown profile '" + a.profile + "'");
  const auto strategy = parse_strategy(a.strategy);
  if (!strategy) throw ValidationError("unknown strategy '" + a.strategy + "'");
  auto outlines = load_outline_set(a.outlines);
  std::vector<CorpusDocument> docs = a.corpus ? LocalCorpus::load(*a.corpus).documents()
                                              : synthesize_corpus(outlines);
  SimWorld world{std::move(outlines), load_outline(a.attention), LocalCorpus(std::move(docs)),
                 default_blacklist(), LexicalEmbedder(), SessionConfig{}};
  const SimSession s = run_agent(AgentProfile::defaults(*kind, a.seed), a.topic, *strategy, world);

  fs::create_directories(a.out / "logs");
  {
    std::ofstream f(a.out / "logs" / (s.session_id + ".log"), std::ios::binary | std::ios::trunc);
    for (const auto& e : s.log) f << to_log_line(e) << '\n';
    if (!f) throw ConfigError("cannot write the session log");
  }
  write_report({a.out / "logs", a.outlines, a.out / "report", std::nullopt});
  std::cout << s.session_id << ": " << s.log.size() << " events, "
            << s.record.behavior.query_count << " queries" << std::endl;
  return 0;
}

int validate_outline(const fs::path& path) {
  const TopicOutline o = load_outline(path);
  std::cout << "L1=" << o.total_l1() << " L2=" << o.total_l2 << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scaffold search-as-learning service and tools"};
  app.require_subcommand(1);

  std::optional<fs::path> config;
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP service");
  serve_cmd->add_option("--config", config, "config file (default: $SCAFFOLD_CONFIG or ./scaffold.yaml)");

  fs::path corpus_dir, index_out;
  auto* index_cmd = app.add_subcommand("index-corpus", "build a BM25 index file for a corpus");
  index_cmd->add_option("--corpus", corpus_dir, "directory of corpus YAML documents")->required();
  index_cmd->add_option("--out", index_out, "index file to write")->required();

  fs::path synth_outlines = "fixtures/outlines", synth_out;
  std::uint64_t synth_seed = 7;
  auto* synth_cmd = app.add_subcommand("synth-corpus", "write the synthetic local corpus");
  synth_cmd->add_option("--outlines", synth_outlines, "outline directory");
  synth_cmd->add_option("--out", synth_out, "output directory")->required();
  synth_cmd->add_option("--seed", synth_seed, "generator seed");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "run one simulated learner session");
  sim_cmd->add_option("--profile", sim.profile, "freeform, outline-follower or gauge-chaser");
  sim_cmd->add_option("--topic", sim.topic, "topic id")->required();
  sim_cmd->add_option("--strategy", sim.strategy, "control, aqe, curated or feedback");
  sim_cmd->add_option("--seed", sim.seed, "agent seed");
  sim_cmd->add_option("--out", sim.out, "output directory")->required();
  sim_cmd->add_option("--outlines", sim.outlines, "outline directory");
  sim_cmd->add_option("--attention", sim.attention, "attention topic file");
  sim_cmd->add_option("--corpus", sim.corpus, "corpus directory (default: synthetic)");

  ReportPaths report;
  auto* report_cmd = app.add_subcommand("report", "cohort tables from session logs");
  report_cmd->add_option("--logs", report.logs, "directory of <session_id>.log files")->required();
  report_cmd->add_option("--outlines", report.outlines, "outline directory")->required();
  report_cmd->add_option("--out", report.out, "output directory")->required();
  report_cmd->add_option("--vks", report.vks, "directory of <session_id>.json test files");

  fs::path outline_path;
  auto* validate_cmd = app.add_subcommand("validate-outline", "parse an outline and print its counts");
  validate_cmd->add_option("path", outline_path, "outline file or directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) return serve(config);
    if (*index_cmd) return index_corpus(corpus_dir, index_out);
    if (*synth_cmd) return synth_corpus(synth_outlines, synth_out, synth_seed);
    if (*sim_cmd) return simulate(sim);
    if (*report_cmd) {
      const std::size_t n = write_report(report);
      std::cout << n << " sessions reported to " << report.out.string() << std::endl;
      return 0;
    }
    if (*validate_cmd) return validate_outline(outline_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 1;
}
