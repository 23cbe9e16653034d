#include "core/box_optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace irtbench {
namespace {

template <int N>
using Vec = std::array<double, N>;

template <int N>
using Mat = std::array<std::array<double, N>, N>;

template <int N>
Mat<N> identity() {
  Mat<N> m{};
  for (int i = 0; i < N; ++i) m[i][i] = 1.0;
  return m;
}

template <int N>
double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <int N>
Vec<N> project(const BoxProblem<N>& p, Vec<N> x) {
  for (int i = 0; i < N; ++i) x[i] = std::clamp(x[i], p.lower[i], p.upper[i]);
  return x;
}

template <int N>
double projected_gradient_norm(const BoxProblem<N>& p, const Vec<N>& x, const Vec<N>& g) {
  double norm = 0.0;
  for (int i = 0; i < N; ++i) {
    const double moved = std::clamp(x[i] - g[i], p.lower[i], p.upper[i]);
    norm = std::max(norm, std::abs(x[i] - moved));
  }
  return norm;
}

}  // namespace

template <int N>
BoxResult<N> minimize_box(const BoxProblem<N>& problem, Vec<N> start, const BoxOptions& options) {
  constexpr double kArmijo = 1e-4;
  BoxResult<N> result;
  Vec<N> x = project<N>(problem, start);
  Vec<N> g{};
  double f = problem.objective(x, g);
  Mat<N> h = identity<N>();
  bool fresh = true;

  for (int it = 0; it < options.max_iterations; ++it) {
    result.iterations = it;
    if (!std::isfinite(f)) break;
    if (projected_gradient_norm<N>(problem, x, g) < options.gradient_tol) {
      result.converged = true;
      break;
    }

    std::array<bool, N> free{};
    for (int i = 0; i < N; ++i) {
      const bool at_lower = x[i] <= problem.lower[i] && g[i] > 0.0;
      const bool at_upper = x[i] >= problem.upper[i] && g[i] < 0.0;
      free[i] = !(at_lower || at_upper);
    }
    Vec<N> d{};
    for (int i = 0; i < N; ++i) {
      if (!free[i]) continue;
      for (int j = 0; j < N; ++j) {
        if (free[j]) d[i] -= h[i][j] * g[j];
      }
    }
    if (dot<N>(g, d) >= 0.0) {
      h = identity<N>();
      fresh = true;
      for (int i = 0; i < N; ++i) d[i] = free[i] ? -g[i] : 0.0;
    }

    bool accepted = false;
    Vec<N> xt{};
    Vec<N> gt{};
    double ft = f;
    double step = 1.0;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      for (int i = 0; i < N; ++i) xt[i] = x[i] + step * d[i];
      xt = project<N>(problem, xt);
      Vec<N> s{};
      for (int i = 0; i < N; ++i) s[i] = xt[i] - x[i];
      if (dot<N>(s, s) == 0.0) break;
      ft = problem.objective(xt, gt);
      if (std::isfinite(ft) && ft <= f + kArmijo * dot<N>(g, s)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (fresh) break;  // steepest descent also failed; nothing left to try
      h = identity<N>();
      fresh = true;
      continue;
    }

    Vec<N> s{};
    Vec<N> y{};
    for (int i = 0; i < N; ++i) {
      s[i] = xt[i] - x[i];
      y[i] = gt[i] - g[i];
    }
    const double sy = dot<N>(s, y);
    if (sy > 1e-12 * std::sqrt(dot<N>(s, s) * dot<N>(y, y))) {
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const double rho = 1.0 / sy;
      Vec<N> hy{};
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) hy[i] += h[i][j] * y[j];
      }
      const double yhy = dot<N>(y, hy);
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          h[i][j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
      }
      fresh = false;
    }
    x = xt;
    g = gt;
    f = ft;
    result.iterations = it + 1;
  }
  if (!result.converged && std::isfinite(f)) {
    result.converged = projected_gradient_norm<N>(problem, x, g) < options.gradient_tol;
  }
  result.x = x;
  result.value = f;
  return result;
}

template BoxResult<3> minimize_box<3>(const BoxProblem<3>&, Vec<3>, const BoxOptions&);

}  // namespace irtbench
