#include "core/item_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "core/error.hpp"
#include "core/ranking.hpp"

namespace irtbench {

void ThresholdConfig::validate() const {
  if (!std::isfinite(difficulty_min) || !std::isfinite(discrimination_min) ||
      !std::isfinite(guessing_min)) {
    fail(ErrorCode::kInvalidArgument, "thresholds must be finite");
  }
  if (!(discrimination_min > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "discrimination threshold must be positive");
  }
}

const char* to_string(RankKey key) noexcept {
  switch (key) {
    case RankKey::kDifficulty: return "difficulty";
    case RankKey::kDiscrimination: return "discrimination";
    case RankKey::kGuessing: return "guessing";
  }
  return "difficulty";
}

double profile_value(const DatasetProfile& profile, RankKey key) noexcept {
  switch (key) {
    case RankKey::kDifficulty: return profile.pct_difficult;
    case RankKey::kDiscrimination: return profile.pct_discriminative;
    case RankKey::kGuessing: return profile.pct_guessable;
  }
  return 0.0;
}

DatasetProfile profile_dataset(std::string dataset_id, std::span<const ItemParams> items,
                               const ThresholdConfig& thresholds) {
  thresholds.validate();
  DatasetProfile profile;
  profile.dataset_id = std::move(dataset_id);
  std::size_t difficult = 0, discriminative = 0, guessable = 0, negative = 0;
  for (const auto& item : items) {
    if (item.degenerate()) {
      ++profile.degenerate_count;
      continue;
    }
    ++profile.item_count;
    difficult += item.b > thresholds.difficulty_min;
    discriminative += item.a > thresholds.discrimination_min;
    guessable += item.c > thresholds.guessing_min;
    negative += item.a < 0.0;
  }
  if (profile.item_count == 0) {
    fail(ErrorCode::kEmptyProfile,
         fmt::format("dataset '{}': every item is degenerate", profile.dataset_id));
  }
  const double n = static_cast<double>(profile.item_count);
  profile.pct_difficult = 100.0 * static_cast<double>(difficult) / n;
  profile.pct_discriminative = 100.0 * static_cast<double>(discriminative) / n;
  profile.pct_guessable = 100.0 * static_cast<double>(guessable) / n;
  profile.pct_negative_discrimination = 100.0 * static_cast<double>(negative) / n;
  return profile;
}

std::vector<std::string> rank_datasets(std::span<const DatasetProfile> profiles, RankKey key) {
  std::vector<const DatasetProfile*> order;
  order.reserve(profiles.size());
  for (const auto& p : profiles) order.push_back(&p);
  std::sort(order.begin(), order.end(), [key](const DatasetProfile* l, const DatasetProfile* r) {
    const double lv = profile_value(*l, key);
    const double rv = profile_value(*r, key);
    if (lv != rv) return lv > rv;
    return l->dataset_id < r->dataset_id;
  });
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (const auto* p : order) ids.push_back(p->dataset_id);
  return ids;
}

TrueScore true_score(double theta, std::span<const ItemParams> items, std::string respondent_id) {
  if (items.empty()) fail(ErrorCode::kValidation, "true score needs at least one item");
  TrueScore score;
  score.respondent_id = std::move(respondent_id);
  score.item_count = items.size();
  for (const auto& item : items) score.value += p_correct(theta, item);
  return score;
}

double difficulty_discrimination_spearman(std::span<const DatasetProfile> profiles) {
  std::vector<double> diff, disc;
  for (const auto& p : profiles) {
    diff.push_back(p.pct_difficult);
    disc.push_back(p.pct_discriminative);
  }
  return spearman(diff, disc);
}

}  // namespace irtbench
