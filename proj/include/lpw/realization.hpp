#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "lpw/detail/sum.hpp"
#include "lpw/error.hpp"
#include "lpw/grid.hpp"
#include "lpw/lp_core.hpp"
#include "lpw/spaces.hpp"
#include "lpw/szasz.hpp"

namespace lpw {

/// sum_{j=-M}^{M} Q_j f over the levels the grid resolves.
inline Field sigma0_partial(const Field& f, int M) {
  if (M < 0) throw Error(Errc::invalid_params, "M must be non-negative");
  const BandLimits band = feasible_band(f.grid);
  const int lo = std::max(-M, band.j_min);
  const int hi = std::min(M, band.j_max);
  if (lo > hi)
    throw Error(Errc::level_out_of_band, "levels [-" + std::to_string(M) + ", " + std::to_string(M) +
                                             "] miss the band [" + std::to_string(band.j_min) + ", " +
                                             std::to_string(band.j_max) + "]");
  const GridSpec& g = f.grid;
  Spectrum s = forward_ft(f);
  for (std::size_t pos = 0; pos < s.coeffs.size(); ++pos) {
    if (s.coeffs[pos] == cplx(0.0)) continue;
    const double rad = g.radial_frequency(pos);
    double m = 0.0;
    for (int j = lo; j <= hi; ++j) m += level_multiplier(rad, j);
    s.coeffs[pos] *= m;
  }
  return inverse_ft(s);
}

/// sum_{0 < |xi_k| <= R} |g(xi_k)| dxi^n.
inline double low_frequency_mass(const Spectrum& s, double R) {
  const GridSpec& g = s.grid;
  if (!(R > g.dxi()))
    throw Error(Errc::radius_below_resolution,
                "R = " + std::to_string(R) + " does not exceed dxi = " + std::to_string(g.dxi()));
  detail::CompensatedSum acc;
  for (std::size_t pos = 0; pos < s.coeffs.size(); ++pos) {
    const double rad = g.radial_frequency(pos);
    if (rad == 0.0 || rad > R) continue;
    acc.add(std::abs(s.coeffs[pos]));
  }
  return acc.value() * g.frequency_cell();
}

inline double low_frequency_mass(const Field& f, double R) { return low_frequency_mass(forward_ft(f), R); }

struct RealizationReport {
  int M = 0;
  double R = 1.0;
  double low_mass = 0.0;
  double besov = 0.0;
  bool feasible = false;
};

/// Low-frequency mass and Besov norm (s, r, q of the query) of sigma0_partial(f, M).
inline RealizationReport realization_report(const Field& f, const SzaszQuery& query, int M, double R = 1.0) {
  query.validate();
  const Field partial = sigma0_partial(f, M);
  SpaceParams b = query.space;
  b.family = Family::B;
  return {M, R, low_frequency_mass(partial, R), besov_norm(partial, b), realization_feasible(query)};
}

/// One report per radius; the mass bound has to hold for every R.
inline std::vector<RealizationReport> realization_sweep(const Field& f, const SzaszQuery& query, int M,
                                                        const std::vector<double>& radii = {0.25, 1.0, 4.0}) {
  query.validate();
  const Field partial = sigma0_partial(f, M);
  const Spectrum spec = forward_ft(partial);
  SpaceParams b = query.space;
  b.family = Family::B;
  const double besov = besov_norm(partial, b);
  const bool feasible = realization_feasible(query);
  std::vector<RealizationReport> out;
  for (double R : radii) out.push_back({M, R, low_frequency_mass(spec, R), besov, feasible});
  return out;
}

}  // namespace lpw
