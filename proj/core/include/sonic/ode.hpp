#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace sonic::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Tolerance {
  double rtol = 1e-12;
  double atol = 1e-12;
  std::size_t max_steps = 200000;
};

enum class StopReason { kReachedEnd, kPredicate };

template <std::size_t N>
struct Sample {
  double t;
  State<N> y;
};

template <std::size_t N>
struct Result {
  State<N> y;
  double t;
  StopReason reason;
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

template <std::size_t N>
using Rhs = std::function<State<N>(double, const State<N>&)>;

/// Stop predicate checked after every accepted step.
template <std::size_t N>
using Stop = std::function<bool(double, const State<N>&)>;

/// Integrates y' = rhs(t, y) from t0 to t1 (either direction). Non-finite
/// stage values are treated as a failed step and retried with a smaller step.
/// Throws StepFailure when the step size underflows or max_steps is exceeded.
template <std::size_t N>
Result<N> integrate(const Rhs<N>& rhs, double t0, const State<N>& y0, double t1,
                    const Tolerance& tol, const Stop<N>& stop = {},
                    std::vector<Sample<N>>* path = nullptr);

void throw_step_failure(double t, double h, const char* why);

namespace detail {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace detail

template <std::size_t N>
Result<N> integrate(const Rhs<N>& rhs, double t0, const State<N>& y0, double t1,
                    const Tolerance& tol, const Stop<N>& stop,
                    std::vector<Sample<N>>* path) {
  using namespace detail;
  Result<N> out{y0, t0, StopReason::kReachedEnd};
  if (path) path->push_back({t0, y0});
  if (t1 == t0) return out;

  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  double h = dir * std::min(span, 1e-2);
  double t = t0;
  State<N> y = y0;
  State<N> k1 = rhs(t, y);

  auto axpy = [](const State<N>& base, double h,
                 std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> r = base;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [c, k] : terms) acc += c * (*k)[i];
      r[i] += h * acc;
    }
    return r;
  };

  while (dir * (t1 - t) > 0.0) {
    if (out.steps + out.rejected >= tol.max_steps)
      throw_step_failure(t, h, "maximum step count exceeded");
    bool clipped = false;
    if (dir * (t + h - t1) >= 0.0) {
      h = t1 - t;
      clipped = true;
    }

    const State<N> k2 = rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State<N> k3 = rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State<N> k4 =
        rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State<N> k5 = rhs(
        t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State<N> k6 = rhs(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3},
                                               {a64, &k4}, {a65, &k5}}));
    const State<N> y_new = axpy(
        y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State<N> k7 = rhs(t + h, y_new);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
      const double scale =
          tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double r = e / scale;
      err += r * r;
      finite = finite && std::isfinite(y_new[i]) && std::isfinite(k7[i]);
    }
    err = std::sqrt(err / N);

    if (!finite || !std::isfinite(err)) {
      h *= 0.25;
      ++out.rejected;
      if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
        throw_step_failure(t, h, "non-finite right-hand side");
      continue;
    }

    if (err <= 1.0) {
      t = clipped ? t1 : t + h;
      y = y_new;
      k1 = k7;
      ++out.steps;
      if (path) path->push_back({t, y});
      if (stop && stop(t, y)) {
        out.y = y;
        out.t = t;
        out.reason = StopReason::kPredicate;
        return out;
      }
      const double fac = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
      h *= fac;
    } else {
      ++out.rejected;
      h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
      if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
        throw_step_failure(t, h, "step size underflow");
    }
  }
  out.y = y;
  out.t = t1;
  return out;
}

}  // namespace sonic::ode
