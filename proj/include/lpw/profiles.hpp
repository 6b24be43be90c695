#pragma once

#include <cmath>

// Smooth profiles behind the Littlewood-Paley ladder.
//
// lowpass_profile is 1 on |t| <= 1, 0 on |t| >= 3/2 and interpolates with the
// e^{-1/x} mollifier ratio. gamma_profile(t) = lowpass(|t|) - lowpass(2|t|) is
// supported in 1/2 <= |t| <= 3/2, equals 1 on 3/4 <= |t| <= 1, and its dyadic
// translates telescope to 1 away from the origin.

namespace lpw {

namespace detail {

inline double mollifier(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Weights (a, b) with a/(a+b) the smoothstep at x in (0,1).
struct StepWeights {
  double rising;
  double falling;
};

inline StepWeights step_weights(double x) { return {mollifier(x), mollifier(1.0 - x)}; }

}  // namespace detail

/// Smooth monotone step: 0 for x <= 0, 1 for x >= 1.
inline double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const auto w = detail::step_weights(x);
  return w.rising / (w.rising + w.falling);
}

inline double lowpass_profile(double t) {
  t = std::abs(t);
  if (t <= 1.0) return 1.0;
  if (t >= 1.5) return 0.0;
  // 1 - smoothstep(x), written as b/(a+b) to keep full relative precision.
  const auto w = detail::step_weights(2.0 * (t - 1.0));
  return w.falling / (w.rising + w.falling);
}

inline double gamma_profile(double t) {
  t = std::abs(t);
  if (t <= 0.5 || t >= 1.5) return 0.0;
  if (t >= 0.75 && t <= 1.0) return 1.0;
  if (t > 1.0) return lowpass_profile(t);  // lowpass(2t) vanishes here
  // t in (1/2, 3/4): 1 - lowpass(2t), evaluated with the same step argument
  // 2(2t - 1) that the next level uses, so adjacent levels sum to 1 exactly.
  const auto w = detail::step_weights(2.0 * (2.0 * t - 1.0));
  return w.rising / (w.rising + w.falling);
}

}  // namespace lpw
