#include "core/irt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "core/box_optimizer.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"

namespace irtbench {
namespace {

constexpr double kProbFloor = 1e-12;

// Fixed starts (a, b, c); the 3PL likelihood is multimodal.
constexpr std::array<std::array<double, 3>, 4> kStarts = {{
    {1.0, 0.0, 0.1},
    {2.0, -1.0, 0.1},
    {2.0, 1.0, 0.1},
    {0.5, 0.0, 0.2},
}};

double logistic(double z) noexcept {
  z = std::clamp(z, -kExponentClamp, kExponentClamp);
  return 1.0 / (1.0 + std::exp(-z));
}

// Walks uphill from `start` with doubling steps until the objective drops,
// then polishes inside the bracket with Brent's method.
template <typename F>
double maximize_local(F&& f, double start, double lo, double hi) {
  double x0 = std::clamp(start, lo, hi);
  const double f0 = f(x0);
  constexpr double kStep = 0.25;
  const double xr = std::min(hi, x0 + kStep);
  const double xl = std::max(lo, x0 - kStep);
  const double fr = xr > x0 ? f(xr) : -std::numeric_limits<double>::infinity();
  const double fl = xl < x0 ? f(xl) : -std::numeric_limits<double>::infinity();

  double left = xl;
  double right = xr;
  if (fr > f0 || fl > f0) {
    const double dir = fr >= fl ? 1.0 : -1.0;
    double prev = x0;
    double cur = dir > 0 ? xr : xl;
    double fcur = dir > 0 ? fr : fl;
    double step = kStep;
    while (true) {
      step *= 2.0;
      const double next = std::clamp(cur + dir * step, lo, hi);
      if (next == cur) {
        left = std::min(prev, cur);
        right = std::max(prev, cur);
        break;
      }
      const double fnext = f(next);
      if (fnext < fcur) {
        left = std::min(prev, next);
        right = std::max(prev, next);
        break;
      }
      prev = cur;
      cur = next;
      fcur = fnext;
    }
  }
  const auto [xbest, negbest] = boost::math::tools::brent_find_minima(
      [&](double x) { return -f(x); }, left, right, 40);
  double best = xbest;
  double fbest = -negbest;
  for (double edge : {left, right}) {
    if (edge == lo || edge == hi) {
      const double fe = f(edge);
      if (fe >= fbest) {
        best = edge;
        fbest = fe;
      }
    }
  }
  return best;
}

}  // namespace

const char* to_string(DegenerateFlag flag) noexcept {
  switch (flag) {
    case DegenerateFlag::kNone: return "none";
    case DegenerateFlag::kAllCorrect: return "all_correct";
    case DegenerateFlag::kAllWrong: return "all_wrong";
    case DegenerateFlag::kNonconverged: return "nonconverged";
  }
  return "none";
}

DegenerateFlag parse_degenerate_flag(const std::string& text) {
  if (text == "none") return DegenerateFlag::kNone;
  if (text == "all_correct") return DegenerateFlag::kAllCorrect;
  if (text == "all_wrong") return DegenerateFlag::kAllWrong;
  if (text == "nonconverged") return DegenerateFlag::kNonconverged;
  fail(ErrorCode::kParse, fmt::format("unknown item flag '{}'", text));
}

void FitConfig::validate() const {
  if (max_outer_iterations < 1) fail(ErrorCode::kInvalidArgument, "max_outer_iterations must be >= 1");
  if (!(b_convergence_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "b_convergence_tol must be > 0");
  if (!(inner_optimizer_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "inner_optimizer_tol must be > 0");
  const auto& bd = bounds;
  if (!(bd.a_min < bd.a_max && bd.b_min < bd.b_max && bd.c_min < bd.c_max &&
        bd.theta_min < bd.theta_max && bd.c_min >= 0.0 && bd.c_max < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "inconsistent parameter bounds");
  }
}

double p_correct(double theta, double a, double b, double c) noexcept {
  return c + (1.0 - c) * logistic(a * (theta - b));
}

double item_log_likelihood(std::span<const std::uint8_t> responses, std::span<const double> theta,
                           double a, double b, double c, std::array<double, 3>* grad) {
  double ll = 0.0;
  double ga = 0.0, gb = 0.0, gc = 0.0;
  for (std::size_t j = 0; j < responses.size(); ++j) {
    const double d = theta[j] - b;
    const double z = a * d;
    const bool clamped = std::abs(z) >= kExponentClamp;
    const double s = logistic(z);
    const double p = std::clamp(c + (1.0 - c) * s, kProbFloor, 1.0 - kProbFloor);
    const bool hit = responses[j] != 0;
    ll += hit ? std::log(p) : std::log1p(-p);
    if (grad) {
      const double dldp = hit ? 1.0 / p : -1.0 / (1.0 - p);
      const double slope = clamped ? 0.0 : (1.0 - c) * s * (1.0 - s);
      ga += dldp * slope * d;
      gb -= dldp * slope * a;
      gc += dldp * (1.0 - s);
    }
  }
  if (grad) *grad = {ga, gb, gc};
  return ll;
}

double ability_log_likelihood(std::span<const std::uint8_t> responses,
                              std::span<const ItemParams> items, double theta) {
  double ll = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const double p = std::clamp(p_correct(theta, items[i]), kProbFloor, 1.0 - kProbFloor);
    ll += responses[i] ? std::log(p) : std::log1p(-p);
  }
  return ll;
}

ItemParams fit_item(std::span<const std::uint8_t> responses, std::span<const double> theta,
                    const FitConfig& config, std::string item_id) {
  if (responses.size() != theta.size()) {
    fail(ErrorCode::kValidation, fmt::format("item '{}': {} responses for {} abilities", item_id,
                                             responses.size(), theta.size()));
  }
  if (responses.size() < 2) {
    fail(ErrorCode::kValidation, fmt::format("item '{}': at least 2 respondents required", item_id));
  }
  const auto& bd = config.bounds;
  ItemParams out;
  out.item_id = std::move(item_id);

  const auto hits = std::count(responses.begin(), responses.end(), std::uint8_t{1});
  if (hits == static_cast<std::ptrdiff_t>(responses.size()) || hits == 0) {
    out.flag = hits == 0 ? DegenerateFlag::kAllWrong : DegenerateFlag::kAllCorrect;
    out.a = 1.0;
    out.b = hits == 0 ? bd.b_max : bd.b_min;
    out.c = 0.0;
    out.log_likelihood = item_log_likelihood(responses, theta, out.a, out.b, out.c);
    return out;
  }

  const double scale = 1.0 / static_cast<double>(responses.size());
  BoxProblem<3> problem;
  problem.lower = {bd.a_min, bd.b_min, bd.c_min};
  problem.upper = {bd.a_max, bd.b_max, bd.c_max};
  problem.objective = [&](const std::array<double, 3>& x, std::array<double, 3>& g) {
    const double ll = item_log_likelihood(responses, theta, x[0], x[1], x[2], &g);
    for (auto& v : g) v *= -scale;
    return -ll * scale;
  };
  BoxOptions options;
  options.gradient_tol = config.inner_optimizer_tol;

  bool any_converged = false;
  double best = std::numeric_limits<double>::infinity();
  std::array<double, 3> best_x = kStarts[0];
  for (const auto& start : kStarts) {
    const auto result = minimize_box<3>(problem, start, options);
    out.iterations += result.iterations;
    if (!std::isfinite(result.value)) continue;
    any_converged = any_converged || result.converged;
    if (result.value < best) {
      best = result.value;
      best_x = result.x;
    }
  }
  out.a = best_x[0];
  out.b = best_x[1];
  out.c = best_x[2];
  out.log_likelihood = std::isfinite(best) ? -best / scale : -std::numeric_limits<double>::infinity();
  if (!any_converged) out.flag = DegenerateFlag::kNonconverged;
  return out;
}

double estimate_ability(std::span<const std::uint8_t> responses, std::span<const ItemParams> items,
                        const FitConfig& config, double start) {
  if (responses.size() != items.size()) {
    fail(ErrorCode::kValidation,
         fmt::format("{} responses for {} items", responses.size(), items.size()));
  }
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].degenerate()) usable.push_back(i);
  }
  if (usable.empty()) fail(ErrorCode::kNoInformation, "every item is degenerate");
  std::stable_sort(usable.begin(), usable.end(),
                   [&](std::size_t l, std::size_t r) { return items[l].b < items[r].b; });

  const std::size_t groups = std::min<std::size_t>(kAbilityGroups, usable.size());
  const std::size_t group_size = usable.size() / groups;

  std::vector<ItemParams> active;
  std::vector<std::uint8_t> active_responses;
  active.reserve(usable.size());
  active_responses.reserve(usable.size());
  double theta = std::clamp(start, config.bounds.theta_min, config.bounds.theta_max);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t begin = g * group_size;
    const std::size_t end = g + 1 == groups ? usable.size() : begin + group_size;
    for (std::size_t k = begin; k < end; ++k) {
      active.push_back(items[usable[k]]);
      active_responses.push_back(responses[usable[k]]);
    }
    theta = maximize_local(
        [&](double t) { return ability_log_likelihood(active_responses, active, t); }, theta,
        config.bounds.theta_min, config.bounds.theta_max);
  }
  return theta;
}

void standardize(std::span<double> values) {
  if (values.empty()) return;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  for (auto& v : values) v = sd > 0.0 ? (v - mean) / sd : v - mean;
}

BirnbaumResult birnbaum_fit(const ResponseMatrix& matrix, const FitConfig& config,
                            std::optional<std::span<const double>> initial_theta) {
  config.validate();
  if (matrix.cols() > kMaxItems) {
    fail(ErrorCode::kSize, fmt::format("dataset '{}' has {} items; item estimation is limited to {}",
                                       matrix.dataset_id(), matrix.cols(), kMaxItems));
  }
  if (matrix.rows() < 2) {
    fail(ErrorCode::kValidation,
         fmt::format("dataset '{}': at least 2 respondents are required", matrix.dataset_id()));
  }
  {
    std::set<std::vector<std::uint8_t>> distinct;
    for (std::size_t r = 0; r < matrix.rows() && distinct.size() < 2; ++r) {
      distinct.emplace(matrix.row(r).begin(), matrix.row(r).end());
    }
    if (distinct.size() < 2) {
      fail(ErrorCode::kValidation,
           fmt::format("dataset '{}': every respondent gave identical answers", matrix.dataset_id()));
    }
  }

  const std::size_t n_resp = matrix.rows();
  const std::size_t n_items = matrix.cols();
  std::vector<double> theta(n_resp);
  if (initial_theta) {
    if (initial_theta->size() != n_resp) {
      fail(ErrorCode::kValidation, "initial abilities do not match the respondent count");
    }
    std::copy(initial_theta->begin(), initial_theta->end(), theta.begin());
  } else {
    for (std::size_t r = 0; r < n_resp; ++r) {
      const auto row = matrix.row(r);
      theta[r] = static_cast<double>(std::count(row.begin(), row.end(), std::uint8_t{1})) /
                 static_cast<double>(n_items);
    }
    standardize(theta);
  }

  std::vector<std::vector<std::uint8_t>> columns(n_items);
  for (std::size_t i = 0; i < n_items; ++i) columns[i] = matrix.column(i);

  BirnbaumResult result;
  std::vector<ItemParams> items(n_items);
  std::vector<double> previous_b;
  for (int iter = 1; iter <= config.max_outer_iterations; ++iter) {
    parallel_for(n_items, config.workers, [&](std::size_t i) {
      items[i] = fit_item(columns[i], theta, config, matrix.item_ids()[i]);
    });
    result.iterations = iter;
    if (!previous_b.empty()) {
      double delta = 0.0;
      for (std::size_t i = 0; i < n_items; ++i) {
        delta = std::max(delta, std::abs(items[i].b - previous_b[i]));
      }
      result.last_max_delta_b = delta;
      if (delta < config.b_convergence_tol) {
        result.converged = true;
        break;
      }
    }
    if (iter == config.max_outer_iterations) break;
    previous_b.resize(n_items);
    for (std::size_t i = 0; i < n_items; ++i) previous_b[i] = items[i].b;

    bool informative = std::any_of(items.begin(), items.end(),
                                   [](const ItemParams& it) { return !it.degenerate(); });
    if (!informative) {
      fail(ErrorCode::kNoInformation,
           fmt::format("dataset '{}': no estimable item", matrix.dataset_id()));
    }
    std::vector<double> next(n_resp);
    parallel_for(n_resp, config.workers, [&](std::size_t r) {
      next[r] = estimate_ability(matrix.row(r), items, config, theta[r]);
    });
    if (config.standardize_abilities) standardize(next);
    theta = std::move(next);
  }

  result.items = std::move(items);
  result.abilities.respondent_ids = matrix.respondent_ids();
  result.abilities.theta = std::move(theta);
  return result;
}

}  // namespace irtbench
