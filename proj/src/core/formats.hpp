#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "core/benchmark_builder.hpp"
#include "core/irt.hpp"
#include "core/item_analysis.hpp"
#include "core/rating.hpp"
#include "core/stats.hpp"

// CSV layouts shared by the pipeline stages and by external tools.
namespace irtbench::formats {

// item,a,b,c,flag
std::string item_params_csv(std::span<const ItemParams> items);
std::vector<ItemParams> parse_item_params_csv(const std::string& text);

// respondent,theta,true_score
struct AbilityRow {
  std::string respondent_id;
  double theta = 0.0;
  double true_score = 0.0;
};
std::string abilities_csv(std::span<const AbilityRow> rows);
std::vector<AbilityRow> parse_abilities_csv(const std::string& text);

// dataset,pct_difficult,pct_discriminative,pct_guessable,pct_negative_a,items
std::string profiles_csv(std::span<const DatasetProfile> profiles);
std::vector<DatasetProfile> parse_profiles_csv(const std::string& text);
std::vector<DatasetProfile> load_profiles(const std::filesystem::path& path);

/// Rounds every percentage to the two decimals the profile CSV carries.
DatasetProfile rounded(DatasetProfile profile);

// player,rating,rd,volatility -- descending rating
std::string ratings_csv(const RatingMap& ratings);

// subset,discrimination_avg,discrimination_sd,difficulty_avg,difficulty_sd
std::string characterization_csv(
    std::span<const std::pair<std::string, SubsetCharacterization>> rows);

// field,<label>_mean,<label>_median,<label>_sd ... one column group per set
std::string metadata_csv(std::span<const std::pair<std::string, SubsetCharacterization>> rows);

// classifier,<t1>,...,<tk> -- square p-value matrix
std::string nemenyi_csv(std::span<const std::string> treatments, const NemenyiResult& result);

}  // namespace irtbench::formats
