#pragma once

#include <cmath>
#include <vector>

#include "stirap/errors.hpp"

namespace stirap {

struct IntegrationOptions {
  double step = 0.0;              // fixed step; runner defaults to width/2000
  double samples_per_unit = 200;  // target output density
  double t0 = 0.0;
  double t1 = 0.0;
};

template <class State>
struct TimeSeries {
  std::vector<double> t;
  std::vector<State> y;

  int size() const { return static_cast<int>(t.size()); }

  /// Index of the last sample with time <= query (clamped to the ends).
  int locate(double query) const {
    if (t.empty()) throw Error("empty time series");
    if (query <= t.front()) return 0;
    if (query >= t.back()) return size() - 1;
    int lo = 0, hi = size() - 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (t[mid] <= query ? lo : hi) = mid;
    }
    return lo;
  }
};

namespace detail {
inline long step_count(const IntegrationOptions& opt) {
  if (!(opt.step > 0.0)) throw ConfigError("integration step must be positive");
  if (!(opt.t1 > opt.t0)) throw ConfigError("integration window must have t1 > t0");
  const double span = opt.t1 - opt.t0;
  const double n = std::ceil(span / opt.step - 1e-9);
  if (n > 1e8) throw ConfigError("integration step-count guard exceeded");
  return n < 1.0 ? 1 : static_cast<long>(n);
}
}  // namespace detail

/// Classical fixed-step RK4. The step is rounded so an integer number of
/// steps spans the window (never enlarged by more than one part in 2n).
/// Deterministic: identical inputs give bit-identical output.
template <class State, class Rhs>
TimeSeries<State> integrate(Rhs&& rhs, const State& y0, const IntegrationOptions& opt) {
  const long n = detail::step_count(opt);
  const double h = (opt.t1 - opt.t0) / static_cast<double>(n);
  long stride = std::lround(1.0 / (opt.samples_per_unit * h));
  if (stride < 1) stride = 1;

  TimeSeries<State> out;
  out.t.reserve(static_cast<size_t>(n / stride) + 2);
  out.y.reserve(static_cast<size_t>(n / stride) + 2);
  State y = y0;
  out.t.push_back(opt.t0);
  out.y.push_back(y);
  for (long i = 0; i < n; ++i) {
    const double t = opt.t0 + static_cast<double>(i) * h;
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1);
    const State k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2);
    const State k4 = rhs(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
    if ((i + 1) % stride == 0 || i + 1 == n) {
      out.t.push_back(i + 1 == n ? opt.t1 : opt.t0 + static_cast<double>(i + 1) * h);
      out.y.push_back(y);
    }
  }
  return out;
}

}  // namespace stirap
