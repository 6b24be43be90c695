#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lpw/detail/sum.hpp"
#include "lpw/error.hpp"
#include "lpw/grid.hpp"
#include "lpw/lp_core.hpp"
#include "lpw/profiles.hpp"

namespace lpw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Family { B, F };
enum class Setting { homogeneous, inhomogeneous };

inline const char* family_name(Family f) { return f == Family::B ? "B" : "F"; }
inline const char* setting_name(Setting s) { return s == Setting::homogeneous ? "homogeneous" : "inhomogeneous"; }

/// (s, r, q) with r, q in (0, inf]; infinity means supremum semantics.
struct SpaceParams {
  double s = 0.0;
  double r = 2.0;
  double q = 2.0;
  Family family = Family::B;
  Setting setting = Setting::homogeneous;

  void validate() const {
    if (!std::isfinite(s)) throw Error(Errc::invalid_params, "smoothness s must be finite");
    if (!(r > 0.0)) throw Error(Errc::invalid_params, "r must lie in (0, inf]");
    if (!(q > 0.0)) throw Error(Errc::invalid_params, "q must lie in (0, inf]");
    if (family == Family::F && std::isinf(r)) throw Error(Errc::invalid_params, "r=inf unsupported in F-case");
  }

  static SpaceParams besov(double s, double r, double q, Setting setting = Setting::homogeneous) {
    return {s, r, q, Family::B, setting};
  }
  static SpaceParams triebel(double s, double r, double q, Setting setting = Setting::homogeneous) {
    return {s, r, q, Family::F, setting};
  }
};

/// (sum_i |f(x_i)|^r dx^n)^{1/r}, or max |f| for r = inf.
inline double lr_quasinorm(const Field& f, double r) {
  if (!(r > 0.0)) throw Error(Errc::invalid_exponent, "r must be positive, got " + std::to_string(r));
  if (std::isinf(r)) return max_abs(f.values);
  detail::CompensatedSum acc;
  if (r == 2.0) {
    for (const auto& v : f.values) acc.add(std::norm(v));
    return std::sqrt(acc.value() * f.grid.cell_volume());
  }
  if (r == 1.0) {
    for (const auto& v : f.values) acc.add(std::abs(v));
    return acc.value() * f.grid.cell_volume();
  }
  const double half = 0.5 * r;
  for (const auto& v : f.values) acc.add(std::pow(std::norm(v), half));
  return std::pow(acc.value() * f.grid.cell_volume(), 1.0 / r);
}

namespace detail {

/// Calls visit(weight, piece) for every nonzero Littlewood-Paley piece that
/// enters the norm: 2^{js} Q_j f over the band (homogeneous, k = 0 dropped),
/// or S_0 f followed by 2^{js} Q_j f for j = 1..j_max (inhomogeneous).
inline void for_each_piece(const Field& f, const SpaceParams& params,
                           const std::function<void(double, const Field&)>& visit) {
  const GridSpec& g = f.grid;
  const BandLimits band = feasible_band(g);
  Spectrum spec = forward_ft(f);
  int first = band.j_min;
  if (params.setting == Setting::homogeneous) {
    spec.coeffs[g.zero_frequency()] = 0.0;
  } else {
    if (band.j_max < 1) throw Error(Errc::grid_too_coarse, "inhomogeneous norm needs level 1 in band");
    Spectrum low = spec;
    bool any = false;
    for (std::size_t pos = 0; pos < low.coeffs.size(); ++pos) {
      low.coeffs[pos] *= lowpass_profile(g.radial_frequency(pos));
      any = any || low.coeffs[pos] != cplx(0.0);
    }
    if (any) visit(1.0, inverse_ft(low));
    first = 1;
  }
  for (int j = first; j <= band.j_max; ++j) {
    Spectrum piece = spec;
    if (!mask_level(piece.coeffs, g, j)) continue;
    visit(std::exp2(j * params.s), inverse_ft(piece));
  }
}

inline double lq_combine(const std::vector<double>& terms, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  CompensatedSum acc;
  for (double t : terms) acc.add(std::pow(t, q));
  return std::pow(acc.value(), 1.0 / q);
}

}  // namespace detail

/// (sum_j (2^{js} ||Q_j f||_r)^q)^{1/q} over the grid's band.
inline double besov_norm(const Field& f, const SpaceParams& params) {
  params.validate();
  if (params.family != Family::B) throw Error(Errc::invalid_params, "besov_norm needs family B");
  std::vector<double> terms;
  detail::for_each_piece(f, params, [&](double w, const Field& piece) { terms.push_back(w * lr_quasinorm(piece, params.r)); });
  return detail::lq_combine(terms, params.q);
}

/// || (sum_j (2^{js} |Q_j f|)^q)^{1/q} ||_r, the l_q sum taken pointwise.
inline double triebel_norm(const Field& f, const SpaceParams& params) {
  params.validate();
  if (params.family != Family::F) throw Error(Errc::invalid_params, "triebel_norm needs family F");
  const double q = params.q;
  const double r = params.r;
  std::vector<double> acc(f.values.size(), 0.0);
  detail::for_each_piece(f, params, [&](double w, const Field& piece) {
    if (std::isinf(q)) {
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], w * std::abs(piece.values[i]));
    } else if (q == 2.0) {
      const double w2 = w * w;
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w2 * std::norm(piece.values[i]);
    } else {
      const double wq = std::pow(w, q), half = 0.5 * q;
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += wq * std::pow(std::norm(piece.values[i]), half);
    }
  });
  // acc holds g^q (or g for q = inf); integrate g^r.
  const double power = std::isinf(q) ? r : r / q;
  detail::CompensatedSum total;
  for (double a : acc) total.add(power == 1.0 ? a : std::pow(a, power));
  return std::pow(total.value() * f.grid.cell_volume(), 1.0 / r);
}

inline double space_norm(const Field& f, const SpaceParams& params) {
  return params.family == Family::B ? besov_norm(f, params) : triebel_norm(f, params);
}

/// Relative L2 mass of the spectrum the truncated ladder does not reconstruct
/// (k = 0 ignored in the homogeneous setting).
inline double uncovered_spectral_fraction(const Spectrum& s, Setting setting) {
  const GridSpec& g = s.grid;
  const BandLimits band = feasible_band(g);
  const int first = setting == Setting::homogeneous ? band.j_min : 1;
  detail::CompensatedSum total, missed;
  for (std::size_t pos = 0; pos < s.coeffs.size(); ++pos) {
    if (setting == Setting::homogeneous && pos == g.zero_frequency()) continue;
    const double rad = g.radial_frequency(pos);
    double cover = setting == Setting::homogeneous ? 0.0 : lowpass_profile(rad);
    for (int j = first; j <= band.j_max; ++j) cover += level_multiplier(rad, j);
    const double m2 = std::norm(s.coeffs[pos]);
    total.add(m2);
    missed.add(m2 * (1.0 - cover) * (1.0 - cover));
  }
  return total.value() > 0.0 ? std::sqrt(missed.value() / total.value()) : 0.0;
}

/// Non-fatal validation: out-of-band spectral mass above 1e-10, or a field
/// that is not negligible near the box boundary.
inline std::vector<std::string> norm_warnings(const Field& f, Setting setting) {
  std::vector<std::string> out;
  const double leak = uncovered_spectral_fraction(forward_ft(f), setting);
  if (leak > 1e-10) out.push_back("spectral mass outside the resolved band: " + std::to_string(leak));
  const double edge = boundary_fraction(f);
  if (edge > kBoundaryNegligible) out.push_back("field not negligible near the box boundary: " + std::to_string(edge));
  return out;
}

}  // namespace lpw
