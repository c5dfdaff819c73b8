// sampledrank: exact, expected and simulated sampled ranking metrics.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sampledrank/harness.h"

namespace {

struct Flags {
  std::string input;
  std::vector<std::string> metrics;
  std::int64_t samples = 0;
  std::vector<std::int64_t> sample_list;
  std::string scheme;
  std::int64_t repetitions = 1000;
  std::uint64_t seed = 0;
  std::string format;
  std::string output;
  int threads = 0;
  sampledrank::Rank catalog_size = 10000;
  sampledrank::Rank first_rank = 1;
  sampledrank::Rank last_rank = 0;
  sampledrank::Rank rank_step = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and sampled top-N ranking metrics"};
  app.require_subcommand(1);
  Flags flags;

  const auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input) {
      cmd->add_option("--input", flags.input,
                      "dataset: algorithm,instance_id,n,ranks per line")
          ->required()
          ->check(CLI::ExistingFile);
    }
    cmd->add_option("--metric", flags.metrics,
                    "auc, ap, ndcg, recall@k, precision@k, rr, accuracy "
                    "(repeatable; default auc ap ndcg recall@10)");
    cmd->add_option("--format", flags.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", flags.output, "output file (default stdout)");
    cmd->add_option("--threads", flags.threads, "OpenMP threads (0: default)");
  };
  const auto add_scheme = [&](CLI::App* cmd) {
    cmd->add_option("--scheme", flags.scheme, "with or without replacement")
        ->check(CLI::IsMember({"with", "without"}));
  };

  auto* exact = app.add_subcommand("exact", "mean exact metrics");
  add_common(exact, true);

  auto* expected = app.add_subcommand("expected", "analytic expected sampled metrics");
  add_common(expected, true);
  add_scheme(expected);
  expected->add_option("--m", flags.samples, "sampled irrelevant items");
  expected->add_option("--m-list", flags.sample_list, "several m values")
      ->delimiter(',');

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo sampled metrics");
  add_common(simulate, true);
  add_scheme(simulate);
  simulate->add_option("--m", flags.samples, "sampled irrelevant items")
      ->required();
  simulate->add_option("--reps", flags.repetitions, "repetitions")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", flags.seed, "master seed")->required();

  auto* sweep = app.add_subcommand("sweep", "expected metrics over m");
  add_common(sweep, true);
  add_scheme(sweep);
  sweep->add_option("--m-list", flags.sample_list, "increasing m values")
      ->required()
      ->delimiter(',');

  auto* curve = app.add_subcommand("curve", "metric vs predicted rank");
  add_common(curve, false);
  add_scheme(curve);
  curve->add_option("--n", flags.catalog_size, "catalog size");
  curve->add_option("--r-min", flags.first_rank, "first rank");
  curve->add_option("--r-max", flags.last_rank, "last rank (default n)");
  curve->add_option("--r-step", flags.rank_step, "rank step");
  curve->add_option("--m-list", flags.sample_list,
                    "m values for expected sampled curves")
      ->delimiter(',');

  auto* consistency =
      app.add_subcommand("consistency", "does sampling keep the exact ordering?");
  add_common(consistency, true);
  add_scheme(consistency);
  consistency->add_option("--m", flags.samples,
                          "sampled irrelevant items (default: max of --m-list)");
  consistency->add_option("--m-list", flags.sample_list,
                          "also report crossovers over these m values")
      ->delimiter(',');

  auto* reproduce = app.add_subcommand(
      "reproduce-paper", "running-example tables and figure CSVs");
  reproduce->add_option("--output", flags.output,
                        "output directory (default ./reproduction)");
  reproduce->add_option("--seed", flags.seed, "seed for the simulated table (default 20190101)");
  reproduce->add_option("--threads", flags.threads, "OpenMP threads");

  CLI11_PARSE(app, argc, argv);

  sampledrank::RunConfig config;
  config.command = app.get_subcommands().front()->get_name();
  try {
    if (!flags.input.empty()) config.input = flags.input;
    for (const auto& m : flags.metrics) {
      config.specs.push_back(sampledrank::MetricSpec::Parse(m));
    }
    auto* cmd = app.get_subcommands().front();
    if (cmd->get_option_no_throw("--m") && cmd->count("--m") > 0) {
      config.samples = flags.samples;
    }
    config.sample_list = flags.sample_list;
    if (!flags.scheme.empty()) {
      config.replacement = sampledrank::ParseReplacement(flags.scheme);
    }
    config.repetitions = flags.repetitions;
    if (cmd->get_option_no_throw("--seed") && cmd->count("--seed") > 0) {
      config.seed = flags.seed;
    }
    if (!flags.format.empty()) config.format = sampledrank::ParseFormat(flags.format);
    if (!flags.output.empty()) config.output = flags.output;
    config.threads = flags.threads;
    config.catalog_size = flags.catalog_size;
    config.first_rank = flags.first_rank;
    if (flags.last_rank > 0) config.last_rank = flags.last_rank;
    config.rank_step = flags.rank_step;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sampledrank::kExitValidation;
  }
  return sampledrank::RunCommand(config, std::cout, std::cerr);
}
