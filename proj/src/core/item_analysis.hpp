#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/irt.hpp"

namespace irtbench {

struct ThresholdConfig {
  double difficulty_min = 1.0;
  double discrimination_min = 0.75;
  double guessing_min = 0.2;

  void validate() const;
};

/// Share of estimable items above each threshold, in percent.
struct DatasetProfile {
  std::string dataset_id;
  double pct_difficult = 0.0;
  double pct_discriminative = 0.0;
  double pct_guessable = 0.0;
  double pct_negative_discrimination = 0.0;
  std::size_t item_count = 0;       // estimable items (the denominator)
  std::size_t degenerate_count = 0; // excluded from the percentages
};

enum class RankKey { kDifficulty, kDiscrimination, kGuessing };

const char* to_string(RankKey key) noexcept;
double profile_value(const DatasetProfile& profile, RankKey key) noexcept;

struct TrueScore {
  std::string respondent_id;
  double value = 0.0;  // expected number of correct items
  std::size_t item_count = 0;
};

DatasetProfile profile_dataset(std::string dataset_id, std::span<const ItemParams> items,
                               const ThresholdConfig& thresholds);

/// Dataset ids by descending percentage; ties by ascending id.
std::vector<std::string> rank_datasets(std::span<const DatasetProfile> profiles, RankKey key);

TrueScore true_score(double theta, std::span<const ItemParams> items, std::string respondent_id = {});

/// Spearman correlation between the difficulty and discrimination percentages
/// across datasets. NaN when fewer than 2 datasets or a constant column.
double difficulty_discrimination_spearman(std::span<const DatasetProfile> profiles);

}  // namespace irtbench
