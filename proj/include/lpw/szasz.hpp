#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lpw/detail/sum.hpp"
#include "lpw/error.hpp"
#include "lpw/grid.hpp"
#include "lpw/lp_core.hpp"
#include "lpw/spaces.hpp"

namespace lpw {

/// r' = r/(r-1) for 1 < r <= inf, and inf for 0 < r <= 1.
inline double conjugate_exponent(double r) {
  if (!(r > 0.0)) throw Error(Errc::invalid_exponent, "r must be positive, got " + std::to_string(r));
  if (r <= 1.0) return kInf;
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

/// theta = s + n - n/p - n/r, with n/inf = 0.
inline double szasz_exponent(double s, double p, double r, int n) {
  if (!(p > 0.0) || !(r > 0.0)) throw Error(Errc::invalid_exponent, "p and r must be positive");
  const double dn = static_cast<double>(n);
  return s + dn - dn / p - dn / r;
}

enum class WeightMode { homogeneous, inhomogeneous };

inline WeightMode weight_mode(Setting s) {
  return s == Setting::homogeneous ? WeightMode::homogeneous : WeightMode::inhomogeneous;
}

/// (sum_k w(xi_k)^{p} |g_k|^p dxi^n)^{1/p} with w = |xi|^theta (k = 0 dropped)
/// or (1 + |xi|)^theta; p = inf takes the largest weighted modulus.
inline double weighted_lhs(const Spectrum& g, double theta, double p, WeightMode mode) {
  if (!(p > 0.0)) throw Error(Errc::invalid_exponent, "p must be positive, got " + std::to_string(p));
  const GridSpec& grid = g.grid;
  const std::size_t zero = grid.zero_frequency();
  const bool sup = std::isinf(p);
  double best = 0.0;
  detail::CompensatedSum acc;
  for (std::size_t pos = 0; pos < g.coeffs.size(); ++pos) {
    const double mag = std::abs(g.coeffs[pos]);
    if (mag == 0.0) continue;
    if (mode == WeightMode::homogeneous && pos == zero) continue;
    const double rad = grid.radial_frequency(pos);
    const double base = mode == WeightMode::homogeneous ? rad : 1.0 + rad;
    const double v = (theta == 0.0 ? 1.0 : std::pow(base, theta)) * mag;
    if (sup)
      best = std::max(best, v);
    else
      acc.add(p == 2.0 ? v * v : std::pow(v, p));
  }
  if (sup) return best;
  return std::pow(acc.value() * grid.frequency_cell(), 1.0 / p);
}

/// A parameter system (s, p, q, r, n) together with the space family/setting.
struct SzaszQuery {
  SpaceParams space;
  double p = 2.0;
  int n = 1;

  void validate() const {
    space.validate();
    if (!(p > 0.0)) throw Error(Errc::invalid_params, "p must lie in (0, inf]");
    if (n < 1) throw Error(Errc::invalid_params, "dimension n must be a positive integer");
  }

  double theta() const { return szasz_exponent(space.s, p, space.r, n); }
};

struct Condition {
  std::string id;
  bool pass;
};

struct ClassificationResult {
  double theta = 0.0;
  bool weak = false;
  bool strong = false;
  std::vector<Condition> verdict_trace;
};

// Exponent comparisons with infinity as a genuine top element. Equality
// tolerates 1e-12 relative error so that e.g. r = 4/3 gives p = r' at p = 4.
namespace order {

inline constexpr double kRelTol = 1e-12;

inline bool eq(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= kRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}
inline bool lt(double a, double b) { return a < b && !eq(a, b); }
inline bool le(double a, double b) { return a < b || eq(a, b); }

}  // namespace order

/// Translation commuting realization exists: s < n/r, or s = n/r with q <= 1
/// (B) resp. r <= 1 (F).
inline bool realization_feasible(const SzaszQuery& query) {
  const double critical = static_cast<double>(query.n) / query.space.r;
  if (order::lt(query.space.s, critical)) return true;
  if (!order::eq(query.space.s, critical)) return false;
  return query.space.family == Family::B ? order::le(query.space.q, 1.0) : order::le(query.space.r, 1.0);
}

inline ClassificationResult classify(const SzaszQuery& query) {
  query.validate();
  const SpaceParams& sp = query.space;
  const double p = query.p, q = sp.q, r = sp.r;
  const double rc = conjugate_exponent(r);
  const double critical = static_cast<double>(query.n) / r;

  ClassificationResult out;
  out.theta = query.theta();
  auto& trace = out.verdict_trace;

  const bool r_small = order::le(r, 2.0);
  trace.push_back({"r<=2", r_small});
  if (sp.family == Family::B) {
    const bool chain = order::le(q, p) && order::le(p, rc);
    trace.push_back({"q<=p<=r'", chain});
    out.weak = r_small && chain;
  } else {
    const bool open = order::le(r, p) && order::lt(p, rc);
    const bool border = order::le(q, p) && order::eq(p, rc);
    trace.push_back({"r<=p<r'", open});
    trace.push_back({"q<=p=r'", border});
    out.weak = r_small && (open || border);
  }

  const bool below = order::lt(sp.s, critical);
  trace.push_back({"s<n/r", below});
  const bool at = order::eq(sp.s, critical);
  if (sp.family == Family::B)
    trace.push_back({"s=n/r&q<=1", at && order::le(q, 1.0)});
  else
    trace.push_back({"s=n/r&r<=1", at && order::le(r, 1.0)});

  out.strong = out.weak && realization_feasible(query);
  return out;
}

/// Empirical constant: weighted Fourier-side functional over the space norm.
inline double szasz_ratio(const Field& f, const SzaszQuery& query) {
  query.validate();
  if (query.n != f.grid.dim()) throw Error(Errc::invalid_params, "query dimension does not match the grid");
  const double norm = space_norm(f, query.space);
  if (!(norm > 1e-300)) throw Error(Errc::zero_denominator, "space norm vanishes");
  const double lhs = weighted_lhs(forward_ft(f), query.theta(), query.p, weight_mode(query.space.setting));
  return lhs / norm;
}

}  // namespace lpw
