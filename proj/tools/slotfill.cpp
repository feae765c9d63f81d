// Copyright 2026 The Slotfill Authors
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

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slotfill/errors.hpp"
#include "slotfill/pipeline.hpp"
#include "slotfill/strings.hpp"

namespace {

// Exit codes: 2 = configuration error, 3 = input format error, 1 = other.
constexpr int kConfigExit = 2;
constexpr int kFormatExit = 3;

struct CommonFlags {
  std::string config_path;
  std::string run_id;
  int limit = -1;
  long seed = -1;
  std::vector<std::string> disabled;
};

slotfill::PipelineConfig make_config(const CommonFlags& flags) {
  slotfill::PipelineConfig config = slotfill::load_config(flags.config_path);
  if (!flags.run_id.empty()) config.run_id = flags.run_id;
  if (flags.limit >= 0) config.retrieval_limit = flags.limit;
  if (flags.seed >= 0) config.seed = static_cast<unsigned>(flags.seed);
  for (const std::string& name : flags.disabled) {
    config.validators.erase(
        std::remove(config.validators.begin(), config.validators.end(), name),
        config.validators.end());
  }
  if (config.validators.empty())
    throw slotfill::ConfigError("all validators disabled");
  return config;
}

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "pipeline config file")->required();
  cmd->add_option("--run-id", flags->run_id, "run identifier stamped on responses");
  cmd->add_option("--limit", flags->limit, "retrieval limit per query");
  cmd->add_option("--seed", flags->seed, "master random seed");
  cmd->add_option("--disable", flags->disabled, "disable a validator (repeatable)");
}

void print_score(const slotfill::ScoreReport& report) {
  std::cout << "returned:     " << report.returned << "\n"
            << "correct:      " << report.correct << "\n"
            << "gold classes: " << report.gold_classes << "\n"
            << "precision:    " << slotfill::fmt_fixed(report.precision, 4) << "\n"
            << "recall:       " << slotfill::fmt_fixed(report.recall, 4) << "\n"
            << "f1:           " << slotfill::fmt_fixed(report.f1, 4) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query-driven slot filling over a tagged text corpus"};
  app.require_subcommand(1);

  CommonFlags train_flags, tune_flags, run_flags;
  std::string out_path;
  std::string responses_path, gold_path, lexicon_path;
  bool anydoc = false, lowercase = false;

  CLI::App* train_cmd = app.add_subcommand("train", "build classifier and pattern artifacts");
  add_common_flags(train_cmd, &train_flags);

  CLI::App* tune_cmd = app.add_subcommand("tune", "greedy global parameter tuning on dev data");
  add_common_flags(tune_cmd, &tune_flags);
  std::string dev_queries, dev_gold;
  tune_cmd->add_option("--dev-queries", dev_queries, "dev query file (overrides config)");
  tune_cmd->add_option("--dev-gold", dev_gold, "dev gold file (overrides config)");

  CLI::App* run_cmd = app.add_subcommand("run", "answer queries and write a response file");
  add_common_flags(run_cmd, &run_flags);
  run_cmd->add_option("--out", out_path, "output response file")->required();

  CLI::App* score_cmd = app.add_subcommand("score", "score a response file against gold");
  score_cmd->add_option("--responses", responses_path, "response file")->required();
  score_cmd->add_option("--gold", gold_path, "gold file")->required();
  score_cmd->add_option("--lexicon", lexicon_path, "anchor lexicon for normal forms");
  score_cmd->add_flag("--anydoc", anydoc, "ignore document ids when matching");
  score_cmd->add_flag("--lowercase", lowercase, "case-insensitive filler matching");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) {
      slotfill::TrainReport report = slotfill::cmd_train(make_config(train_flags));
      std::cout << "trained " << report.relations_trained.size() << " relation(s) from "
                << report.training_matches << " match(es); " << report.pattern_examples
                << " pattern example(s), " << report.nil_examples << " NIL example(s)\n";
      for (const std::string& warning : report.warnings)
        std::cerr << "warning: " << warning << "\n";
    } else if (tune_cmd->parsed()) {
      slotfill::PipelineConfig config = make_config(tune_flags);
      if (!dev_queries.empty()) config.dev_queries_path = dev_queries;
      if (!dev_gold.empty()) config.dev_gold_path = dev_gold;
      slotfill::TuneReport report = slotfill::cmd_tune(config);
      std::cout << "cost factors (F1 " << slotfill::fmt_fixed(report.cost_factors.f1, 4)
                << "):\n";
      for (const auto& [relation, value] : report.cost_factors.params)
        std::cout << "  " << relation << "\t" << slotfill::fmt_double(value) << "\n";
      std::cout << "thresholds (F1 " << slotfill::fmt_fixed(report.thresholds.f1, 4)
                << "):\n";
      for (const auto& [relation, value] : report.thresholds.params)
        std::cout << "  " << relation << "\t" << slotfill::fmt_double(value) << "\n";
    } else if (run_cmd->parsed()) {
      slotfill::PipelineConfig config = make_config(run_flags);
      std::vector<slotfill::ResponseRecord> records = slotfill::cmd_run(config);
      slotfill::write_responses(out_path, records);
      long answered = 0;
      for (const auto& rec : records) {
        if (!rec.nil) ++answered;
      }
      std::cout << "wrote " << records.size() << " row(s) (" << answered
                << " non-NIL) to " << out_path << "\n";
    } else if (score_cmd->parsed()) {
      slotfill::ScoreFlags flags;
      flags.anydoc = anydoc;
      flags.lowercase = lowercase;
      print_score(slotfill::cmd_score(responses_path, gold_path, flags, lexicon_path));
    }
  } catch (const slotfill::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const slotfill::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kFormatExit;
  } catch (const slotfill::ParseError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kFormatExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
