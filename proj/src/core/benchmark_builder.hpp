#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/item_analysis.hpp"

namespace irtbench {

struct SubsetResult {
  double cut_pct = 0.0;
  std::size_t target_size = 0;
  std::vector<std::string> members;  // sorted by dataset id
  std::vector<std::string> difficulty_ranking;
  std::vector<std::string> discrimination_ranking;
  std::size_t from_difficulty = 0;
  std::size_t from_discrimination = 0;
  std::size_t overlaps = 0;  // datasets that qualified on both initial lists
};

/// Target subset size: round-half-up of cut_pct% of `count`.
std::size_t subset_size(double cut_pct, std::size_t count);

/// Most difficult ceil(k/2) plus most discriminative floor(k/2) datasets;
/// overlaps are refilled alternately from the next-ranked candidates,
/// difficulty first.
SubsetResult build_subset(double cut_pct, std::span<const DatasetProfile> profiles);

struct Summary {
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;  // population
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

using DatasetMetadata = std::map<std::string, std::map<std::string, double>>;

struct SubsetCharacterization {
  std::size_t member_count = 0;
  Summary discrimination;
  Summary difficulty;
  std::map<std::string, Summary> metadata;  // only fields present for members
};

SubsetCharacterization characterize(std::span<const std::string> members,
                                    std::span<const DatasetProfile> profiles,
                                    const DatasetMetadata* metadata = nullptr);

}  // namespace irtbench
