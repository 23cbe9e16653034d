#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/benchmark_builder.hpp"
#include "core/irt.hpp"
#include "core/item_analysis.hpp"
#include "core/rating.hpp"

namespace irtbench {

inline constexpr const char* kToolVersion = "0.3.0";

struct DatasetEntry {
  std::string id;
  std::filesystem::path responses;
  std::optional<std::filesystem::path> labels;
  std::map<std::string, double> metadata;
};

/// Everything a run depends on. Relative paths resolve against the manifest's
/// directory. `created` is supplied by the author of the manifest; the engine
/// never stamps wall-clock time into outputs.
struct Manifest {
  std::string name = "corpus";
  std::string created;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::filesystem::path out_dir = "out";
  std::filesystem::path base_dir = ".";
  std::vector<DatasetEntry> datasets;

  bool add_artificial = true;
  FitConfig fit;
  ThresholdConfig thresholds;
  TournamentConfig tournament;
  int order_sweep_orders = 10;
  std::vector<double> cuts = {30.0, 50.0, 70.0};
  std::optional<std::filesystem::path> profiles_override;
  double alpha = 0.05;
  bool stats_real_only = true;

  /// Serialized form with paths relative to base_dir; out_dir and workers are
  /// left out since they do not change any output.
  nlohmann::json to_json() const;
};

Manifest parse_manifest(const nlohmann::json& doc, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

/// Command-line overrides applied on top of the manifest.
struct RunOverrides {
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<double> difficulty_min;
  std::optional<double> discrimination_min;
  std::optional<double> guessing_min;
  bool order_sweep = false;
};

struct DatasetFailure {
  std::string dataset_id;
  std::string stage;
  int code = 0;
  std::string message;
};

/// Seeds for rand1..rand3 of one dataset.
std::array<std::uint64_t, 3> artificial_seeds(std::uint64_t seed, const std::string& dataset_id);

std::string sha256_hex(std::string_view data);

/// Runs pipeline stages for one manifest. Each stage reads the previous
/// stage's files from the output directory, so stages may be invoked in
/// separate processes. Dataset-level problems are collected in failures();
/// anything else throws.
class Pipeline {
 public:
  Pipeline(Manifest manifest, const RunOverrides& overrides);

  const Manifest& manifest() const noexcept { return manifest_; }
  const std::string& manifest_hash() const noexcept { return hash_; }
  const std::filesystem::path& out_dir() const noexcept { return manifest_.out_dir; }
  const std::vector<DatasetFailure>& failures() const noexcept { return failures_; }

  void fit();
  void analyze();
  void rate();
  SubsetResult subset(double cut_pct);
  void stats();
  /// All stages in order, then report.json and report.md.
  void report();

 private:
  void write_manifest() const;
  std::vector<std::string> fitted_datasets() const;

  Manifest manifest_;
  bool order_sweep_ = false;
  std::string hash_;
  std::vector<DatasetFailure> failures_;
};

}  // namespace irtbench
