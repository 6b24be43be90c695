#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpw/detail/fft.hpp"
#include "lpw/error.hpp"
#include "lpw/grid.hpp"
#include "lpw/profiles.hpp"

namespace lpw {

// Lowest annulus must span at least this many frequency bins.
inline constexpr double kLowResolution = 4.0;
// Highest annulus must stay below this fraction of Nyquist.
inline constexpr double kNyquistSafety = 0.9;
// Relative amplitude a dilation may push outside the box (or past Nyquist).
inline constexpr double kDilationTolerance = 1e-8;
// Relative amplitude tolerated within 5% of the box boundary.
inline constexpr double kBoundaryNegligible = 1e-12;

namespace detail {

// Centered position c <-> FFT position (c + N/2) mod N, and the (-1)^k phase
// that comes from the box starting at -L/2 (N/2 is even, so (-1)^k = (-1)^c).
inline std::size_t natural_position(const GridSpec& g, std::size_t centered) {
  const std::size_t mask = g.samples() - 1;
  const std::size_t half = g.samples() / 2;
  const auto a = g.axes(centered);
  return g.flat((a[0] + half) & mask, (a[1] + half) & mask);
}

inline double centered_phase(const GridSpec& g, std::size_t centered) {
  const auto a = g.axes(centered);
  return ((a[0] + a[1]) & 1U) ? -1.0 : 1.0;
}

}  // namespace detail

/// F(f)(xi_k) ~ dx^n sum_i f(x_i) e^{-i x_i . xi_k}.
inline Spectrum forward_ft(const Field& f) {
  const GridSpec& g = f.grid;
  std::vector<cplx> buf = f.values;
  detail::dft_inplace(buf, g.dim(), static_cast<int>(g.samples()), FFTW_FORWARD);
  Spectrum out(g);
  const double scale = g.cell_volume();
  for (std::size_t c = 0; c < out.coeffs.size(); ++c)
    out.coeffs[c] = (scale * detail::centered_phase(g, c)) * buf[detail::natural_position(g, c)];
  return out;
}

/// Exact discrete inverse of forward_ft.
inline Field inverse_ft(const Spectrum& s) {
  const GridSpec& g = s.grid;
  std::vector<cplx> buf(g.size());
  for (std::size_t c = 0; c < s.coeffs.size(); ++c)
    buf[detail::natural_position(g, c)] = detail::centered_phase(g, c) * s.coeffs[c];
  detail::dft_inplace(buf, g.dim(), static_cast<int>(g.samples()), FFTW_BACKWARD);
  const double scale = std::pow(1.0 / g.length(), g.dim());
  for (auto& v : buf) v *= scale;
  return Field(g, std::move(buf));
}

/// Samples x -> fn(x1, x2) on the grid (x2 = 0 when n = 1).
template <class Fn>
Field tabulate_field(const GridSpec& g, Fn&& fn) {
  Field out(g);
  for (std::size_t pos = 0; pos < out.values.size(); ++pos) {
    const auto a = g.axes(pos);
    out.values[pos] = fn(g.coordinate(a[0]), g.dim() == 2 ? g.coordinate(a[1]) : 0.0);
  }
  return out;
}

/// Evaluates xi -> fn(xi1, xi2) at every grid frequency.
template <class Fn>
Spectrum tabulate_spectrum(const GridSpec& g, Fn&& fn) {
  Spectrum out(g);
  const double dxi = g.dxi();
  for (std::size_t pos = 0; pos < out.coeffs.size(); ++pos) {
    const auto a = g.axes(pos);
    const double xi0 = dxi * static_cast<double>(g.frequency_index(a[0]));
    const double xi1 = g.dim() == 2 ? dxi * static_cast<double>(g.frequency_index(a[1])) : 0.0;
    out.coeffs[pos] = fn(xi0, xi1);
  }
  return out;
}

struct BandLimits {
  int j_min;
  int j_max;

  bool contains(int j) const { return j >= j_min && j <= j_max; }
  int count() const { return j_max - j_min + 1; }
};

/// Dyadic levels whose annuli 2^{j-1} <= |xi| <= 3 2^{j-1} are resolved:
/// the lowest spans kLowResolution bins, the highest stays under
/// kNyquistSafety of Nyquist.
inline BandLimits feasible_band(const GridSpec& g) {
  const double top = kNyquistSafety * g.nyquist();
  int j_max = static_cast<int>(std::floor(std::log2(top / 3.0))) + 1;
  while (3.0 * std::ldexp(1.0, j_max - 1) > top) --j_max;
  while (3.0 * std::ldexp(1.0, j_max) <= top) ++j_max;

  const double bottom = kLowResolution * g.dxi();
  int j_min = static_cast<int>(std::ceil(std::log2(bottom))) + 1;
  while (std::ldexp(1.0, j_min - 1) < bottom) ++j_min;
  while (std::ldexp(1.0, j_min - 2) >= bottom) --j_min;

  if (j_min > j_max)
    throw Error(Errc::grid_too_coarse,
                "no dyadic level fits (j_min=" + std::to_string(j_min) + ", j_max=" + std::to_string(j_max) + ")");
  return {j_min, j_max};
}

/// Frequencies on which the band's multipliers sum to exactly one.
inline std::pair<double, double> covered_frequencies(const BandLimits& band) {
  return {3.0 * std::ldexp(1.0, band.j_min - 2), std::ldexp(1.0, band.j_max)};
}

inline double level_multiplier(double radial, int j) { return gamma_profile(std::ldexp(radial, -j)); }

namespace detail {

// Multiplies in place by gamma(2^-j |xi|); returns false when the result is
// identically zero.
inline bool mask_level(std::span<cplx> coeffs, const GridSpec& g, int j) {
  bool any = false;
  for (std::size_t pos = 0; pos < coeffs.size(); ++pos) {
    if (coeffs[pos] == cplx(0.0)) continue;
    const double t = std::ldexp(g.radial_frequency(pos), -j);
    if (t <= 0.5 || t >= 1.5) {
      coeffs[pos] = 0.0;
      continue;
    }
    const double m = gamma_profile(t);
    coeffs[pos] *= m;
    any = any || m != 0.0;
  }
  return any;
}

inline void require_level(const GridSpec& g, int j) {
  const BandLimits band = feasible_band(g);
  if (!band.contains(j))
    throw Error(Errc::level_out_of_band, "level " + std::to_string(j) + " outside [" + std::to_string(band.j_min) +
                                             ", " + std::to_string(band.j_max) + "]");
}

}  // namespace detail

/// Spectral Q_j: multiplies by gamma(2^{-j}|xi|). Support is exact.
inline Spectrum lp_project(const Spectrum& s, int j) {
  detail::require_level(s.grid, j);
  Spectrum out = s;
  detail::mask_level(out.coeffs, out.grid, j);
  return out;
}

inline Field lp_project(const Field& f, int j) {
  detail::require_level(f.grid, j);
  return inverse_ft(lp_project(forward_ft(f), j));
}

namespace detail {

inline bool outside_cube(const GridSpec& g, std::size_t pos, double half_width) {
  const auto a = g.axes(pos);
  for (int d = 0; d < g.dim(); ++d)
    if (std::abs(g.coordinate(a[d])) >= half_width) return true;
  return false;
}

inline bool outside_index_cube(const GridSpec& g, std::size_t pos, std::int64_t half_width) {
  const auto a = g.axes(pos);
  for (int d = 0; d < g.dim(); ++d)
    if (std::abs(g.frequency_index(a[d])) >= half_width) return true;
  return false;
}

}  // namespace detail

/// Samples of x -> f(x / 2^m).
///
/// m > 0 decimates the spectrum (new_k = 2^{mn} old_{2^m k}); the field must be
/// concentrated in the central cube of half-width L/2^{m+1}. m < 0 evaluates
/// the transform between grid frequencies through 2^{|m| n} modulated
/// transforms; the spectrum must sit below Nyquist / 2^{|m|}.
inline Field dyadic_dilate(const Field& f, int m, double tolerance = kDilationTolerance) {
  if (m == 0) return f;
  const GridSpec& g = f.grid;
  const std::int64_t N = static_cast<std::int64_t>(g.samples());
  const int n = g.dim();
  if (std::abs(m) >= 30) throw Error(Errc::dilation_escapes_grid, "dilation exponent too large");
  const std::int64_t scale = std::int64_t{1} << std::abs(m);

  if (m > 0) {
    const double peak = max_abs(f.values);
    if (peak == 0.0) return f;
    const double half_width = g.length() / static_cast<double>(2 * scale);
    double outside = 0.0;
    for (std::size_t pos = 0; pos < f.values.size(); ++pos)
      if (detail::outside_cube(g, pos, half_width)) outside = std::max(outside, std::abs(f.values[pos]));
    if (outside > tolerance * peak)
      throw Error(Errc::dilation_escapes_grid, "field not concentrated in the central 1/" + std::to_string(scale) +
                                                   " of the box (relative tail " + std::to_string(outside / peak) + ")");

    const Spectrum s = forward_ft(f);
    Spectrum out(g);
    const double amp = std::pow(static_cast<double>(scale), n);
    for (std::size_t pos = 0; pos < out.coeffs.size(); ++pos) {
      const auto a = g.axes(pos);
      std::array<std::size_t, 2> src{0, 0};
      bool inside = true;
      for (int d = 0; d < n; ++d) {
        const std::int64_t k = g.frequency_index(a[d]) * scale;
        if (k < -N / 2 || k >= N / 2) {
          inside = false;
          break;
        }
        src[d] = static_cast<std::size_t>(k + N / 2);
      }
      if (inside) out.coeffs[pos] = amp * s.coeffs[g.flat(src[0], src[1])];
    }
    return inverse_ft(out);
  }

  const Spectrum s = forward_ft(f);
  const double peak = max_abs(s.coeffs);
  if (peak == 0.0) return f;
  double outside = 0.0;
  for (std::size_t pos = 0; pos < s.coeffs.size(); ++pos)
    if (detail::outside_index_cube(g, pos, N / (2 * scale))) outside = std::max(outside, std::abs(s.coeffs[pos]));
  if (outside > tolerance * peak)
    throw Error(Errc::dilation_escapes_grid, "spectrum reaches past Nyquist/" + std::to_string(scale) +
                                                 " (relative " + std::to_string(outside / peak) + ")");

  // new_k = 2^{mn} F(f)(xi_k / 2^{|m|}); write k = scale*q + r per axis and
  // read F(f)((q + r/scale) dxi) off the transform of f e^{-i x r dxi/scale}.
  Spectrum out(g);
  const double amp = std::pow(static_cast<double>(scale), -n);
  const std::int64_t q_half = N / (2 * scale);
  std::vector<cplx> phase(static_cast<std::size_t>(N));
  const std::int64_t residues = n == 1 ? scale : scale * scale;
  for (std::int64_t rr = 0; rr < residues; ++rr) {
    const std::array<std::int64_t, 2> r{rr % scale, rr / scale};
    Field mod(g);
    std::array<std::vector<cplx>, 2> axis_phase;
    for (int d = 0; d < n; ++d) {
      axis_phase[d].resize(static_cast<std::size_t>(N));
      const double w = g.dxi() * static_cast<double>(r[d]) / static_cast<double>(scale);
      for (std::int64_t i = 0; i < N; ++i)
        axis_phase[d][static_cast<std::size_t>(i)] = std::polar(1.0, -w * g.coordinate(static_cast<std::size_t>(i)));
    }
    for (std::size_t pos = 0; pos < mod.values.size(); ++pos) {
      const auto a = g.axes(pos);
      cplx ph = axis_phase[0][a[0]];
      if (n == 2) ph *= axis_phase[1][a[1]];
      mod.values[pos] = f.values[pos] * ph;
    }
    const Spectrum shifted = forward_ft(mod);
    for (std::int64_t q0 = -q_half; q0 < q_half; ++q0) {
      const std::size_t dst0 = static_cast<std::size_t>(scale * q0 + r[0] + N / 2);
      const std::size_t src0 = static_cast<std::size_t>(q0 + N / 2);
      if (n == 1) {
        out.coeffs[dst0] = amp * shifted.coeffs[src0];
        continue;
      }
      for (std::int64_t q1 = -q_half; q1 < q_half; ++q1) {
        const std::size_t dst1 = static_cast<std::size_t>(scale * q1 + r[1] + N / 2);
        const std::size_t src1 = static_cast<std::size_t>(q1 + N / 2);
        out.coeffs[g.flat(dst0, dst1)] = amp * shifted.coeffs[g.flat(src0, src1)];
      }
    }
  }
  return inverse_ft(out);
}

/// Circular shift by whole samples: (tau f)(x_i) = f(x_{i - shift}).
inline Field grid_shift(const Field& f, std::array<std::int64_t, 2> shift) {
  const GridSpec& g = f.grid;
  const std::int64_t N = static_cast<std::int64_t>(g.samples());
  auto wrap = [N](std::int64_t i) { return static_cast<std::size_t>(((i % N) + N) % N); };
  Field out(g);
  for (std::size_t pos = 0; pos < f.values.size(); ++pos) {
    const auto a = g.axes(pos);
    const std::size_t dst0 = wrap(static_cast<std::int64_t>(a[0]) + shift[0]);
    const std::size_t dst1 = g.dim() == 2 ? wrap(static_cast<std::int64_t>(a[1]) + shift[1]) : 0;
    out.values[g.flat(dst0, dst1)] = f.values[pos];
  }
  return out;
}

/// tau_a f for a spatial offset a whose components are whole multiples of dx.
inline Field grid_translate(const Field& f, std::span<const double> offset) {
  const GridSpec& g = f.grid;
  if (offset.size() != static_cast<std::size_t>(g.dim()))
    throw Error(Errc::invalid_params, "offset dimension does not match grid");
  std::array<std::int64_t, 2> shift{0, 0};
  for (int d = 0; d < g.dim(); ++d) {
    const double steps = offset[d] / g.dx();
    const double rounded = std::round(steps);
    if (!std::isfinite(steps) || std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
      throw Error(Errc::non_grid_shift, "offset " + std::to_string(offset[d]) + " is not a multiple of dx");
    shift[d] = static_cast<std::int64_t>(rounded);
  }
  return grid_shift(f, shift);
}

/// max |f| within 5% of the box boundary, relative to max |f|.
inline double boundary_fraction(const Field& f) {
  const double peak = max_abs(f.values);
  if (peak == 0.0) return 0.0;
  const double inner = 0.45 * f.grid.length();
  double edge = 0.0;
  for (std::size_t pos = 0; pos < f.values.size(); ++pos)
    if (detail::outside_cube(f.grid, pos, inner)) edge = std::max(edge, std::abs(f.values[pos]));
  return edge / peak;
}

}  // namespace lpw
