#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/response_model.hpp"

namespace irtbench {

enum class DegenerateFlag { kNone, kAllCorrect, kAllWrong, kNonconverged };

const char* to_string(DegenerateFlag flag) noexcept;
DegenerateFlag parse_degenerate_flag(const std::string& text);

/// 3PL item parameters: discrimination `a`, difficulty `b`, guessing `c`.
struct ItemParams {
  std::string item_id;
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  DegenerateFlag flag = DegenerateFlag::kNone;
  double log_likelihood = 0.0;
  int iterations = 0;  // optimizer iterations summed over starts

  bool degenerate() const noexcept { return flag != DegenerateFlag::kNone; }
};

struct ParamBounds {
  double a_min = -4.0, a_max = 4.0;
  double b_min = -6.0, b_max = 6.0;
  double c_min = 0.0, c_max = 0.5;
  double theta_min = -6.0, theta_max = 6.0;
};

struct FitConfig {
  int max_outer_iterations = 10;
  double b_convergence_tol = 0.01;
  double inner_optimizer_tol = 1e-4;
  ParamBounds bounds;
  bool standardize_abilities = true;
  unsigned workers = 1;

  void validate() const;
};

struct AbilityVector {
  std::vector<std::string> respondent_ids;
  std::vector<double> theta;
};

struct BirnbaumResult {
  std::vector<ItemParams> items;
  AbilityVector abilities;
  int iterations = 0;
  bool converged = false;
  double last_max_delta_b = 0.0;
};

inline constexpr std::size_t kMaxItems = 1000;
inline constexpr double kExponentClamp = 30.0;
inline constexpr int kAbilityGroups = 10;

/// P(U = 1 | theta) = c + (1 - c) / (1 + exp(-a (theta - b))).
double p_correct(double theta, double a, double b, double c) noexcept;
inline double p_correct(double theta, const ItemParams& item) noexcept {
  return p_correct(theta, item.a, item.b, item.c);
}

/// Bernoulli log-likelihood of one item's response column; gradient w.r.t. (a, b, c)
/// is written to `grad` when non-null.
double item_log_likelihood(std::span<const std::uint8_t> responses, std::span<const double> theta,
                           double a, double b, double c, std::array<double, 3>* grad = nullptr);

/// Log-likelihood of one respondent's answers over `items` at ability `theta`.
double ability_log_likelihood(std::span<const std::uint8_t> responses,
                              std::span<const ItemParams> items, double theta);

/// Maximum-likelihood (a, b, c) for one item given fixed abilities. Never throws on
/// optimizer trouble; sets flag = kNonconverged instead.
ItemParams fit_item(std::span<const std::uint8_t> responses, std::span<const double> theta,
                    const FitConfig& config, std::string item_id = {});

/// Progressive grouped ML ability estimate. Items are sorted by difficulty,
/// cut into 10 groups and added one group at a time, re-maximizing from the
/// previous estimate. Degenerate items carry no information and are skipped.
double estimate_ability(std::span<const std::uint8_t> responses, std::span<const ItemParams> items,
                        const FitConfig& config, double start = 0.0);

/// Alternating joint estimation of item parameters and abilities.
BirnbaumResult birnbaum_fit(const ResponseMatrix& matrix, const FitConfig& config,
                            std::optional<std::span<const double>> initial_theta = std::nullopt);

/// Shifts and scales `values` to mean 0, population sd 1 (left centred if sd is 0).
void standardize(std::span<double> values);

}  // namespace irtbench
