#pragma once

// Finite-difference helpers shared by every module that differentiates
// field data (metrics, tetrads, maps, gauge fields).

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace diracgauge::fd {

struct Options {
  /// Step size; <= 0 selects base * max(1, |x|) on each axis.
  double step = 0.0;
  /// Combine central differences at h and h/2 into a fourth-order estimate.
  bool extrapolate = true;

  double step_for(double x) const {
    if (step > 0.0) return step;
    return (extrapolate ? 1e-3 : 1e-6) * std::max(1.0, std::abs(x));
  }
};

namespace detail {
template <class T>
auto materialize(T&& v) {
  if constexpr (std::is_arithmetic_v<std::decay_t<T>>) {
    return v;
  } else {
    return v.eval();
  }
}
}  // namespace detail

/// Central difference of f along axis `axis` at x with step h.
template <class F, class V>
auto central(const F& f, const V& x, int axis, double h) {
  V plus = x;
  V minus = x;
  plus[axis] += h;
  minus[axis] -= h;
  return detail::materialize((f(plus) - f(minus)) / (2.0 * h));
}

/// Partial derivative along `axis` under the given options.
template <class F, class V>
auto partial(const F& f, const V& x, int axis, const Options& opts = {}) {
  const double h = opts.step_for(x[axis]);
  auto coarse = central(f, x, axis, h);
  if (!opts.extrapolate) return coarse;
  auto fine = central(f, x, axis, 0.5 * h);
  return detail::materialize((4.0 * fine - coarse) / 3.0);
}

/// Observed convergence ratio err(h) / err(h/2); about 4 for a second-order
/// scheme in its asymptotic range.
inline double convergence_ratio(double err_coarse, double err_fine) {
  return err_coarse / err_fine;
}

}  // namespace diracgauge::fd
