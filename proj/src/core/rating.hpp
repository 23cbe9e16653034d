#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace irtbench {

inline constexpr double kGlickoScale = 173.7178;
inline constexpr double kDefaultRating = 1500.0;
inline constexpr double kDefaultDeviation = 350.0;
inline constexpr double kDefaultVolatility = 0.06;
inline constexpr double kVolatilityTolerance = 1e-6;

/// Glicko-2 state on the public (1500-centred) scale.
struct Rating {
  std::string player_id;
  double r = kDefaultRating;
  double rd = kDefaultDeviation;
  double sigma = kDefaultVolatility;
};

struct MatchResult {
  Rating opponent;  // snapshot taken at the start of the period
  double score = 0.0;  // 1 win, 0.5 draw, 0 loss
};

struct RatingUpdate {
  Rating rating;
  int volatility_iterations = 0;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// [r - 2 rd, r + 2 rd]
Interval conservative_interval(const Rating& rating) noexcept;

/// One Glicko-2 rating period. An empty result list only inflates rd.
RatingUpdate update_rating_detailed(const Rating& player, std::span<const MatchResult> results,
                                    double tau);
Rating update_rating(const Rating& player, std::span<const MatchResult> results, double tau);

struct TournamentConfig {
  double tau = 0.5;
  std::vector<std::string> dataset_order;  // empty: ascending dataset id
  int draw_decimals = 6;                   // True-Scores are rounded before comparing

  void validate() const;
};

using ScoreMap = std::map<std::string, double>;
using RatingMap = std::map<std::string, Rating>;

struct PeriodResult {
  RatingMap ratings;
  int max_volatility_iterations = 0;
};

/// Win/draw/loss score of `mine` against `theirs` after rounding.
double pair_score(double mine, double theirs, int draw_decimals);

/// Every pair of players meets once; all updates use the pre-period snapshot.
/// Players without an entry in `ratings` start from the defaults.
PeriodResult round_robin_period(const ScoreMap& true_scores, const RatingMap& ratings,
                                const TournamentConfig& config);

struct PeriodSnapshot {
  std::string dataset_id;
  RatingMap ratings;
};

struct TournamentResult {
  RatingMap final_ratings;
  std::vector<PeriodSnapshot> history;
  int max_volatility_iterations = 0;
};

using DatasetScores = std::pair<std::string, ScoreMap>;

TournamentResult run_tournament(std::span<const DatasetScores> per_dataset,
                                const TournamentConfig& config);

/// Ratings sorted by descending r, ties by player id.
std::vector<Rating> ranked(const RatingMap& ratings);

struct OrderSensitivity {
  int orders = 0;
  double max_rating_delta = 0.0;
  std::map<std::string, double> per_player_max_delta;
};

/// Re-runs the tournament over `orders` seeded random dataset permutations and
/// reports how far final ratings move from the configured order.
OrderSensitivity order_sensitivity(std::span<const DatasetScores> per_dataset,
                                   const TournamentConfig& config, int orders, std::uint64_t seed);

}  // namespace irtbench
