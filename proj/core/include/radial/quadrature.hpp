#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration: the panel with the
// largest error estimate is bisected until the summed error meets
// max(rel_tol * |value|, kQuadAbsFloor).

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

namespace radial {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

inline constexpr double kQuadAbsFloor = 1e-14;

namespace detail {

struct QuadPanel {
  double a;
  double b;
  double value;
  double error;
  unsigned depth;
  bool operator<(const QuadPanel& o) const { return error < o.error; }
};

template <typename F>
QuadPanel gk15_panel(F& f, double a, double b, unsigned depth) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &error);
  return {a, b, value, error, depth};
}

}  // namespace detail

/// Sum of integrals over consecutive pieces [breaks[i], breaks[i+1]].
/// converged is false when a panel would exceed max_depth bisections before
/// the tolerance is met.
template <typename F>
QuadResult integrate_pieces(F&& f, std::span<const double> breaks, double rel_tol = 1e-10,
                            unsigned max_depth = 18) {
  std::priority_queue<detail::QuadPanel> heap;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i] == breaks[i + 1]) continue;
    const auto p = detail::gk15_panel(f, breaks[i], breaks[i + 1], 0);
    value += p.value;
    error += p.error;
    heap.push(p);
  }
  while (!heap.empty()) {
    if (!std::isfinite(value)) return {value, error, false};
    if (error <= std::max(rel_tol * std::abs(value), kQuadAbsFloor)) return {value, error, true};
    const detail::QuadPanel worst = heap.top();
    if (worst.depth >= max_depth) return {value, error, false};
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gk15_panel(f, worst.a, mid, worst.depth + 1);
    const auto right = detail::gk15_panel(f, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    error = std::max(error, 0.0);
    heap.push(left);
    heap.push(right);
  }
  return {value, error, std::isfinite(value)};
}

/// Integral of f over [a, b].
template <typename F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 18) {
  const double breaks[2] = {a, b};
  return integrate_pieces(f, std::span<const double>(breaks, 2), rel_tol, max_depth);
}

}  // namespace radial
