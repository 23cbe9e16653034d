#include "core/rating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <fmt/format.h>

#include "core/error.hpp"

namespace irtbench {
namespace {

constexpr int kMaxVolatilityIterations = 1000;

double g_factor(double phi) {
  return 1.0 / std::sqrt(1.0 + 3.0 * phi * phi / (std::numbers::pi * std::numbers::pi));
}

double expected_score(double mu, double mu_j, double g_j) {
  return 1.0 / (1.0 + std::exp(-g_j * (mu - mu_j)));
}

void require_finite(double value, const char* what, const Rating& player) {
  if (!std::isfinite(value)) {
    fail(ErrorCode::kNumerical,
         fmt::format("non-finite {} updating '{}' (r={}, rd={}, sigma={})", what, player.player_id,
                     player.r, player.rd, player.sigma));
  }
}

}  // namespace

Interval conservative_interval(const Rating& rating) noexcept {
  return {rating.r - 2.0 * rating.rd, rating.r + 2.0 * rating.rd};
}

RatingUpdate update_rating_detailed(const Rating& player, std::span<const MatchResult> results,
                                    double tau) {
  if (!(player.rd > 0.0) || !(player.sigma > 0.0)) {
    fail(ErrorCode::kValidation,
         fmt::format("rating for '{}' needs rd > 0 and sigma > 0", player.player_id));
  }
  RatingUpdate out;
  out.rating = player;
  const double mu = (player.r - kDefaultRating) / kGlickoScale;
  const double phi = player.rd / kGlickoScale;
  const double sigma = player.sigma;

  if (results.empty()) {
    out.rating.rd = kGlickoScale * std::sqrt(phi * phi + sigma * sigma);
    return out;
  }

  double inv_v = 0.0;
  double improvement_sum = 0.0;
  for (const auto& m : results) {
    if (m.score != 0.0 && m.score != 0.5 && m.score != 1.0) {
      fail(ErrorCode::kValidation, fmt::format("match score {} is not 0, 0.5 or 1", m.score));
    }
    const double mu_j = (m.opponent.r - kDefaultRating) / kGlickoScale;
    const double g_j = g_factor(m.opponent.rd / kGlickoScale);
    const double e_j = expected_score(mu, mu_j, g_j);
    inv_v += g_j * g_j * e_j * (1.0 - e_j);
    improvement_sum += g_j * (m.score - e_j);
  }
  const double v = 1.0 / inv_v;
  const double delta = v * improvement_sum;
  require_finite(v, "estimated variance", player);

  // New volatility: root of f by the Illinois variant of regula falsi.
  const double a = std::log(sigma * sigma);
  const double phi2 = phi * phi;
  const auto f = [&](double x) {
    const double ex = std::exp(x);
    const double denom = phi2 + v + ex;
    return ex * (delta * delta - phi2 - v - ex) / (2.0 * denom * denom) - (x - a) / (tau * tau);
  };
  double lo = a;
  double hi = 0.0;
  if (delta * delta > phi2 + v) {
    hi = std::log(delta * delta - phi2 - v);
  } else {
    int k = 1;
    while (f(a - k * tau) < 0.0) ++k;
    hi = a - k * tau;
  }
  double f_lo = f(lo);
  double f_hi = f(hi);
  int iterations = 0;
  while (std::abs(hi - lo) > kVolatilityTolerance) {
    if (++iterations > kMaxVolatilityIterations) {
      fail(ErrorCode::kNumerical,
           fmt::format("volatility iteration for '{}' did not converge", player.player_id));
    }
    const double c = lo + (lo - hi) * f_lo / (f_hi - f_lo);
    const double f_c = f(c);
    if (f_c * f_hi <= 0.0) {
      lo = hi;
      f_lo = f_hi;
    } else {
      f_lo /= 2.0;
    }
    hi = c;
    f_hi = f_c;
  }
  const double sigma_new = std::exp(lo / 2.0);
  const double phi_star = std::sqrt(phi2 + sigma_new * sigma_new);
  const double phi_new = 1.0 / std::sqrt(1.0 / (phi_star * phi_star) + 1.0 / v);
  const double mu_new = mu + phi_new * phi_new * improvement_sum;
  require_finite(sigma_new, "volatility", player);
  require_finite(mu_new, "rating", player);

  out.rating.r = kGlickoScale * mu_new + kDefaultRating;
  out.rating.rd = kGlickoScale * phi_new;
  out.rating.sigma = sigma_new;
  out.volatility_iterations = iterations;
  return out;
}

Rating update_rating(const Rating& player, std::span<const MatchResult> results, double tau) {
  return update_rating_detailed(player, results, tau).rating;
}

void TournamentConfig::validate() const {
  if (!(tau >= 0.2 && tau <= 1.2)) {
    fail(ErrorCode::kInvalidArgument, fmt::format("tau {} outside [0.2, 1.2]", tau));
  }
  if (draw_decimals < 0 || draw_decimals > 12) {
    fail(ErrorCode::kInvalidArgument, "draw_decimals must be in [0, 12]");
  }
}

double pair_score(double mine, double theirs, int draw_decimals) {
  const double scale = std::pow(10.0, draw_decimals);
  const double lhs = std::round(mine * scale);
  const double rhs = std::round(theirs * scale);
  if (lhs > rhs) return 1.0;
  if (lhs < rhs) return 0.0;
  return 0.5;
}

PeriodResult round_robin_period(const ScoreMap& true_scores, const RatingMap& ratings,
                                const TournamentConfig& config) {
  config.validate();
  for (const auto& [id, rating] : ratings) {
    if (!true_scores.contains(id)) {
      fail(ErrorCode::kValidation, fmt::format("player '{}' has no True-Score this period", id));
    }
  }
  if (true_scores.size() < 2) {
    fail(ErrorCode::kValidation, "a round-robin period needs at least 2 players");
  }
  RatingMap snapshot;
  for (const auto& [id, score] : true_scores) {
    const auto it = ratings.find(id);
    Rating r = it != ratings.end() ? it->second : Rating{};
    r.player_id = id;
    snapshot.emplace(id, r);
  }

  PeriodResult out;
  for (const auto& [id, me] : snapshot) {
    std::vector<MatchResult> results;
    results.reserve(snapshot.size() - 1);
    const double mine = true_scores.at(id);
    for (const auto& [other, them] : snapshot) {
      if (other == id) continue;
      results.push_back({them, pair_score(mine, true_scores.at(other), config.draw_decimals)});
    }
    auto update = update_rating_detailed(me, results, config.tau);
    out.max_volatility_iterations = std::max(out.max_volatility_iterations, update.volatility_iterations);
    out.ratings.emplace(id, std::move(update.rating));
  }
  return out;
}

namespace {

std::vector<std::size_t> resolve_order(std::span<const DatasetScores> per_dataset,
                                       const std::vector<std::string>& requested) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < per_dataset.size(); ++i) {
    if (!index.emplace(per_dataset[i].first, i).second) {
      fail(ErrorCode::kValidation, fmt::format("dataset '{}' appears twice", per_dataset[i].first));
    }
  }
  std::vector<std::size_t> order;
  if (requested.empty()) {
    for (const auto& [id, i] : index) order.push_back(i);
    return order;
  }
  if (requested.size() != per_dataset.size()) {
    fail(ErrorCode::kValidation, "dataset order is not a permutation of the provided datasets");
  }
  std::set<std::string> seen;
  for (const auto& id : requested) {
    const auto it = index.find(id);
    if (it == index.end() || !seen.insert(id).second) {
      fail(ErrorCode::kValidation,
           fmt::format("dataset order is not a permutation of the provided datasets (at '{}')", id));
    }
    order.push_back(it->second);
  }
  return order;
}

}  // namespace

TournamentResult run_tournament(std::span<const DatasetScores> per_dataset,
                                const TournamentConfig& config) {
  config.validate();
  const auto order = resolve_order(per_dataset, config.dataset_order);
  TournamentResult out;
  if (per_dataset.empty()) return out;

  std::set<std::string> players;
  for (const auto& [id, score] : per_dataset.front().second) players.insert(id);
  for (const auto& [dataset, scores] : per_dataset) {
    std::set<std::string> here;
    for (const auto& [id, score] : scores) here.insert(id);
    if (here != players) {
      fail(ErrorCode::kValidation,
           fmt::format("dataset '{}' does not have the same player set as the others", dataset));
    }
  }
  for (const auto& id : players) out.final_ratings.emplace(id, Rating{id});

  for (std::size_t idx : order) {
    const auto& [dataset, scores] = per_dataset[idx];
    auto period = round_robin_period(scores, out.final_ratings, config);
    out.max_volatility_iterations = std::max(out.max_volatility_iterations, period.max_volatility_iterations);
    out.final_ratings = std::move(period.ratings);
    out.history.push_back({dataset, out.final_ratings});
  }
  return out;
}

std::vector<Rating> ranked(const RatingMap& ratings) {
  std::vector<Rating> out;
  out.reserve(ratings.size());
  for (const auto& [id, r] : ratings) out.push_back(r);
  std::stable_sort(out.begin(), out.end(), [](const Rating& l, const Rating& r) {
    if (l.r != r.r) return l.r > r.r;
    return l.player_id < r.player_id;
  });
  return out;
}

OrderSensitivity order_sensitivity(std::span<const DatasetScores> per_dataset,
                                   const TournamentConfig& config, int orders, std::uint64_t seed) {
  OrderSensitivity out;
  out.orders = orders;
  const auto baseline = run_tournament(per_dataset, config);
  std::vector<std::string> ids;
  for (const auto& [id, scores] : per_dataset) ids.push_back(id);
  std::mt19937_64 engine(seed);
  for (int k = 0; k < orders; ++k) {
    auto shuffled = ids;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[engine() % i]);
    }
    TournamentConfig permuted = config;
    permuted.dataset_order = shuffled;
    const auto result = run_tournament(per_dataset, permuted);
    for (const auto& [id, rating] : result.final_ratings) {
      const double delta = std::abs(rating.r - baseline.final_ratings.at(id).r);
      auto& slot = out.per_player_max_delta[id];
      slot = std::max(slot, delta);
      out.max_rating_delta = std::max(out.max_rating_delta, delta);
    }
  }
  return out;
}

}  // namespace irtbench
