#include "core/stats.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "core/error.hpp"
#include "core/ranking.hpp"

namespace irtbench {
namespace {

// k = 2..20. Values for k <= 10 are the commonly published ones; the rest are
// q(1 - alpha; k, inf) / sqrt(2) rounded to three decimals.
constexpr std::array<double, 19> kQ05 = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031,
                                         3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                                         3.426, 3.458, 3.489, 3.517, 3.544};
constexpr std::array<double, 19> kQ10 = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780,
                                         2.855, 2.920, 2.978, 3.030, 3.077, 3.120, 3.159,
                                         3.196, 3.230, 3.261, 3.291, 3.319};

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

void BlockDesign::validate(std::size_t min_treatments) const {
  if (k() < min_treatments) {
    fail(ErrorCode::kValidation,
         fmt::format("design has {} treatments; at least {} required", k(), min_treatments));
  }
  if (n() < 2) fail(ErrorCode::kValidation, fmt::format("design has {} blocks; at least 2 required", n()));
  if (values.size() != n() * k()) {
    fail(ErrorCode::kValidation, fmt::format("design has {} values for {}x{}", values.size(), n(), k()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorCode::kValidation, "design contains a missing or non-finite cell");
  }
}

std::vector<double> block_ranks(const BlockDesign& design) {
  std::vector<double> ranks(design.values.size());
  for (std::size_t b = 0; b < design.n(); ++b) {
    const auto row = std::span<const double>(design.values).subspan(b * design.k(), design.k());
    const auto r = average_ranks(row);
    std::copy(r.begin(), r.end(), ranks.begin() + static_cast<std::ptrdiff_t>(b * design.k()));
  }
  return ranks;
}

FriedmanResult friedman(const BlockDesign& design) {
  design.validate(2);
  const std::size_t k = design.k();
  const std::size_t n = design.n();
  const auto ranks = block_ranks(design);

  FriedmanResult out;
  out.mean_ranks.assign(k, 0.0);
  std::size_t tied = 0;
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t j = 0; j < k; ++j) {
      out.mean_ranks[j] += ranks[b * k + j];
      for (std::size_t other = 0; other < k; ++other) {
        if (other != j && design.at(b, other) == design.at(b, j)) {
          ++tied;
          break;
        }
      }
    }
  }
  for (auto& r : out.mean_ranks) r /= static_cast<double>(n);
  out.tie_fraction = static_cast<double>(tied) / static_cast<double>(n * k);

  const double kd = static_cast<double>(k);
  const double centre = (kd + 1.0) / 2.0;
  double ss = 0.0;
  for (double r : out.mean_ranks) ss += (r - centre) * (r - centre);
  out.statistic = 12.0 * static_cast<double>(n) / (kd * (kd + 1.0)) * ss;
  out.df = static_cast<int>(k) - 1;
  out.p_value = boost::math::gamma_q(0.5 * out.df, 0.5 * out.statistic);
  return out;
}

double nemenyi_q(double alpha, std::size_t k) {
  if (k < 2 || k > 20) {
    fail(ErrorCode::kUnsupported, fmt::format("Nemenyi critical values are tabulated for 2 <= k <= 20, got {}", k));
  }
  if (std::abs(alpha - 0.05) < 1e-12) return kQ05[k - 2];
  if (std::abs(alpha - 0.10) < 1e-12) return kQ10[k - 2];
  fail(ErrorCode::kUnsupported, fmt::format("no Nemenyi table for alpha = {}", alpha));
}

double studentized_range_cdf(double q, std::size_t k) {
  if (q <= 0.0) return 0.0;
  const double kd = static_cast<double>(k);
  const auto integrand = [&](double z) {
    const double width = normal_cdf(z + q) - normal_cdf(z);
    return normal_pdf(z) * std::pow(width, kd - 1.0);
  };
  const double value =
      kd * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -12.0, 12.0, 15, 1e-12);
  return std::clamp(value, 0.0, 1.0);
}

NemenyiResult nemenyi(const BlockDesign& design, double alpha) {
  design.validate(3);
  const std::size_t k = design.k();
  NemenyiResult out;
  out.alpha = alpha;
  out.q_alpha = nemenyi_q(alpha, k);
  const double kd = static_cast<double>(k);
  const double se = std::sqrt(kd * (kd + 1.0) / (6.0 * static_cast<double>(design.n())));
  out.critical_difference = out.q_alpha * se;
  out.mean_ranks = friedman(design).mean_ranks;
  out.p_values.assign(k * k, 1.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double z = std::abs(out.mean_ranks[i] - out.mean_ranks[j]) / se;
      const double p = 1.0 - studentized_range_cdf(z * std::numbers::sqrt2, k);
      out.p_values[i * k + j] = p;
      out.p_values[j * k + i] = p;
    }
  }
  return out;
}

}  // namespace irtbench
