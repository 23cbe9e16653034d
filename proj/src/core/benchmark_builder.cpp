#include "core/benchmark_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "core/error.hpp"

namespace irtbench {

std::size_t subset_size(double cut_pct, std::size_t count) {
  if (!(cut_pct > 0.0 && cut_pct <= 100.0)) {
    fail(ErrorCode::kInvalidArgument, fmt::format("cut percentage {} outside (0, 100]", cut_pct));
  }
  return static_cast<std::size_t>(std::floor(cut_pct / 100.0 * static_cast<double>(count) + 0.5 + 1e-9));
}

SubsetResult build_subset(double cut_pct, std::span<const DatasetProfile> profiles) {
  if (profiles.empty()) fail(ErrorCode::kValidation, "no dataset profiles to select from");
  SubsetResult out;
  out.cut_pct = cut_pct;
  out.target_size = subset_size(cut_pct, profiles.size());
  if (out.target_size < 2) {
    fail(ErrorCode::kTooSmall, fmt::format("cut {}% of {} datasets leaves {} (< 2)", cut_pct,
                                           profiles.size(), out.target_size));
  }
  out.difficulty_ranking = rank_datasets(profiles, RankKey::kDifficulty);
  out.discrimination_ranking = rank_datasets(profiles, RankKey::kDiscrimination);

  const std::size_t k = out.target_size;
  const std::size_t difficulty_quota = (k + 1) / 2;
  const std::size_t discrimination_quota = k / 2;
  std::set<std::string> chosen;
  for (std::size_t i = 0; i < difficulty_quota; ++i) chosen.insert(out.difficulty_ranking[i]);
  out.from_difficulty = difficulty_quota;
  for (std::size_t i = 0; i < discrimination_quota; ++i) {
    if (chosen.insert(out.discrimination_ranking[i]).second) {
      ++out.from_discrimination;
    } else {
      ++out.overlaps;
    }
  }

  std::size_t next_difficulty = difficulty_quota;
  std::size_t next_discrimination = discrimination_quota;
  bool difficulty_turn = true;
  while (chosen.size() < k) {
    auto& list = difficulty_turn ? out.difficulty_ranking : out.discrimination_ranking;
    auto& cursor = difficulty_turn ? next_difficulty : next_discrimination;
    while (cursor < list.size() && chosen.contains(list[cursor])) ++cursor;
    if (cursor < list.size()) {
      chosen.insert(list[cursor++]);
      ++(difficulty_turn ? out.from_difficulty : out.from_discrimination);
    }
    difficulty_turn = !difficulty_turn;
  }
  out.members.assign(chosen.begin(), chosen.end());
  return out;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / n);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return s;
}

SubsetCharacterization characterize(std::span<const std::string> members,
                                    std::span<const DatasetProfile> profiles,
                                    const DatasetMetadata* metadata) {
  std::map<std::string, const DatasetProfile*> index;
  for (const auto& p : profiles) index.emplace(p.dataset_id, &p);
  // Sorted copy so the result does not depend on the caller's member order.
  std::vector<std::string> ids(members.begin(), members.end());
  std::sort(ids.begin(), ids.end());

  SubsetCharacterization out;
  out.member_count = ids.size();
  std::vector<double> disc, diff;
  std::map<std::string, std::vector<double>> fields;
  for (const auto& id : ids) {
    const auto it = index.find(id);
    if (it == index.end()) fail(ErrorCode::kValidation, fmt::format("unknown dataset '{}'", id));
    disc.push_back(it->second->pct_discriminative);
    diff.push_back(it->second->pct_difficult);
    if (metadata) {
      if (const auto m = metadata->find(id); m != metadata->end()) {
        for (const auto& [field, value] : m->second) fields[field].push_back(value);
      }
    }
  }
  out.discrimination = summarize(disc);
  out.difficulty = summarize(diff);
  for (const auto& [field, values] : fields) out.metadata.emplace(field, summarize(values));
  return out;
}

}  // namespace irtbench
