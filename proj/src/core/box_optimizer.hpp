#pragma once

#include <array>
#include <functional>

namespace irtbench {

/// Small fixed-dimension minimizer for box-constrained smooth objectives.
///
/// Projected BFGS: the search direction uses the inverse-Hessian estimate on
/// the free variables only (coordinates pinned at a bound with the gradient
/// pointing outward are held fixed), steps are projected back into the box
/// and accepted with an Armijo test along the projection arc.
template <int N>
struct BoxProblem {
  using Vec = std::array<double, N>;
  /// Returns f(x) and writes the gradient into `grad`.
  std::function<double(const Vec& x, Vec& grad)> objective;
  Vec lower{};
  Vec upper{};
};

template <int N>
struct BoxResult {
  std::array<double, N> x{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct BoxOptions {
  double gradient_tol = 1e-4;  // on the projected gradient, infinity norm
  int max_iterations = 200;
};

template <int N>
BoxResult<N> minimize_box(const BoxProblem<N>& problem, std::array<double, N> start,
                          const BoxOptions& options);

extern template BoxResult<3> minimize_box<3>(const BoxProblem<3>&, std::array<double, 3>,
                                             const BoxOptions&);

}  // namespace irtbench
