#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irtbench/irtbench.h"

namespace {

struct Options {
  std::string config = "manifest.json";
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string out_dir;
  std::optional<double> difficulty_min;
  std::optional<double> discrimination_min;
  std::optional<double> guessing_min;
  bool order_sweep = false;
  std::vector<double> cuts;
};

int report_status(irtb_status status, const char* what) {
  if (status == IRTB_OK) return 0;
  std::fprintf(stderr, "irtbench: %s failed (%s): %s\n", what, irtb_status_string(status), irtb_last_error());
  return 1;
}

void report_failures(const irtb_pipeline* pipeline) {
  for (size_t i = 0; i < irtb_pipeline_failure_count(pipeline); ++i) {
    const char* id = nullptr;
    const char* stage = nullptr;
    const char* message = nullptr;
    if (irtb_pipeline_failure(pipeline, i, &id, &stage, &message) == IRTB_OK) {
      std::fprintf(stderr, "irtbench: warning: dataset '%s' skipped at %s: %s\n", id, stage, message);
    }
  }
}

int run(const Options& opts, const std::string& command) {
  irtb_pipeline_options po;
  irtb_pipeline_options_default(&po);
  if (!opts.out_dir.empty()) po.out_dir = opts.out_dir.c_str();
  if (opts.seed) {
    po.has_seed = 1;
    po.seed = *opts.seed;
  }
  po.workers = opts.workers;
  if (opts.difficulty_min) po.difficulty_min = *opts.difficulty_min;
  if (opts.discrimination_min) po.discrimination_min = *opts.discrimination_min;
  if (opts.guessing_min) po.guessing_min = *opts.guessing_min;
  po.order_sweep = opts.order_sweep ? 1 : 0;

  irtb_pipeline* pipeline = nullptr;
  if (int rc = report_status(irtb_pipeline_open(opts.config.c_str(), &po, &pipeline), "opening manifest")) {
    return rc;
  }
  int rc = 0;
  if (command == "fit") {
    rc = report_status(irtb_pipeline_fit(pipeline), "fit");
  } else if (command == "analyze") {
    rc = report_status(irtb_pipeline_analyze(pipeline), "analyze");
  } else if (command == "rate") {
    rc = report_status(irtb_pipeline_rate(pipeline), "rate");
  } else if (command == "subset") {
    std::vector<double> cuts = opts.cuts;
    if (cuts.empty()) {
      for (size_t i = 0; i < irtb_pipeline_cut_count(pipeline); ++i) cuts.push_back(irtb_pipeline_cut(pipeline, i));
    }
    for (double cut : cuts) {
      size_t members = 0;
      rc = report_status(irtb_pipeline_subset(pipeline, cut, &members), "subset");
      if (rc != 0) break;
      std::printf("cut %g%%: %zu datasets\n", cut, members);
    }
  } else if (command == "stats") {
    rc = report_status(irtb_pipeline_stats(pipeline), "stats");
  } else if (command == "report") {
    rc = report_status(irtb_pipeline_report(pipeline), "report");
  }
  report_failures(pipeline);
  if (rc == 0) {
    std::printf("%s: done (manifest %s, output %s)\n", command.c_str(), irtb_pipeline_manifest_hash(pipeline),
                irtb_pipeline_out_dir(pipeline));
  }
  irtb_pipeline_free(pipeline);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Item response theory benchmark curation"};
  app.set_version_flag("--version", irtb_version());
  app.require_subcommand(1);
  Options opts;
  app.add_option("--config", opts.config, "Run manifest (JSON)")->capture_default_str();
  app.add_option("--seed", opts.seed, "Override the manifest seed");
  app.add_option("--workers", opts.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", opts.out_dir, "Output directory");
  app.add_option("--difficulty-threshold", opts.difficulty_min, "Item counts as difficult when b exceeds this");
  app.add_option("--discrimination-threshold", opts.discrimination_min,
                 "Item counts as discriminative when a exceeds this");
  app.add_option("--guessing-threshold", opts.guessing_min, "Item counts as guessable when c exceeds this");

  app.add_subcommand("fit", "Fit 3PL parameters and abilities per dataset");
  app.add_subcommand("analyze", "Profile and rank datasets");
  auto* rate = app.add_subcommand("rate", "Run the Glicko-2 tournament");
  rate->add_flag("--order-sweep", opts.order_sweep, "Also measure dataset-order sensitivity");
  auto* subset = app.add_subcommand("subset", "Select a benchmark subset");
  subset->add_option("--cut", opts.cuts, "Cut percentage (repeatable; default: manifest cuts)")
      ->check(CLI::Range(0.0, 100.0));
  app.add_subcommand("stats", "Friedman and Nemenyi tests on the ratings");
  auto* report = app.add_subcommand("report", "Run every stage and write the report");
  report->add_flag("--order-sweep", opts.order_sweep, "Also measure dataset-order sensitivity");

  CLI11_PARSE(app, argc, argv);
  return run(opts, app.get_subcommands().front()->get_name());
}
