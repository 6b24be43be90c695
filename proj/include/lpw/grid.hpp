#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "lpw/error.hpp"

namespace lpw {

using cplx = std::complex<double>;

/// Uniform periodic sampling of the cube [-L/2, L/2)^n.
///
/// Samples are stored row-major; in two dimensions the first (slow) index is
/// the x1 axis. Spectra use the same layout with centered frequency indices
/// k in [-N/2, N/2) per axis, position p <-> k = p - N/2.
class GridSpec {
 public:
  static GridSpec make(int dim, std::size_t samples, double length) {
    if (dim != 1 && dim != 2)
      throw Error(Errc::invalid_grid, "dimension must be 1 or 2, got " + std::to_string(dim));
    if (samples < 16 || (samples & (samples - 1)) != 0)
      throw Error(Errc::invalid_grid, "samples per axis must be a power of two >= 16");
    if (!(length > 0.0) || !std::isfinite(length))
      throw Error(Errc::invalid_grid, "box length must be positive and finite");
    return GridSpec(dim, samples, length);
  }

  int dim() const { return dim_; }
  std::size_t samples() const { return samples_; }
  double length() const { return length_; }

  /// Total number of samples, N^n.
  std::size_t size() const { return dim_ == 1 ? samples_ : samples_ * samples_; }

  double dx() const { return length_ / static_cast<double>(samples_); }
  double dxi() const { return 2.0 * std::numbers::pi / length_; }
  double nyquist() const { return std::numbers::pi * static_cast<double>(samples_) / length_; }
  double cell_volume() const { return std::pow(dx(), dim_); }
  double frequency_cell() const { return std::pow(dxi(), dim_); }

  /// Spatial coordinate of per-axis sample index i.
  double coordinate(std::size_t i) const { return -0.5 * length_ + static_cast<double>(i) * dx(); }

  /// Centered frequency index of per-axis position p.
  std::int64_t frequency_index(std::size_t p) const {
    return static_cast<std::int64_t>(p) - static_cast<std::int64_t>(samples_ / 2);
  }

  /// Per-axis indices of a flat position (second entry unused for n = 1).
  std::array<std::size_t, 2> axes(std::size_t pos) const {
    if (dim_ == 1) return {pos, 0};
    return {pos / samples_, pos % samples_};
  }

  std::size_t flat(std::size_t i0, std::size_t i1) const { return dim_ == 1 ? i0 : i0 * samples_ + i1; }

  /// Euclidean |xi| at a flat spectrum position.
  double radial_frequency(std::size_t pos) const {
    const auto a = axes(pos);
    const double k0 = static_cast<double>(frequency_index(a[0]));
    if (dim_ == 1) return std::abs(k0) * dxi();
    const double k1 = static_cast<double>(frequency_index(a[1]));
    return std::sqrt(k0 * k0 + k1 * k1) * dxi();
  }

  /// Flat position of the zero frequency.
  std::size_t zero_frequency() const { return flat(samples_ / 2, samples_ / 2); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  GridSpec(int dim, std::size_t samples, double length) : dim_(dim), samples_(samples), length_(length) {}

  int dim_;
  std::size_t samples_;
  double length_;
};

/// Samples f(x_i) on a grid.
struct Field {
  GridSpec grid;
  std::vector<cplx> values;

  explicit Field(const GridSpec& g) : grid(g), values(g.size()) {}
  Field(const GridSpec& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) throw Error(Errc::invalid_params, "field length does not match grid");
  }
};

/// Approximate continuous Fourier transform F(f)(xi_k) at centered indices.
struct Spectrum {
  GridSpec grid;
  std::vector<cplx> coeffs;

  explicit Spectrum(const GridSpec& g) : grid(g), coeffs(g.size()) {}
  Spectrum(const GridSpec& g, std::vector<cplx> c) : grid(g), coeffs(std::move(c)) {
    if (coeffs.size() != grid.size()) throw Error(Errc::invalid_params, "spectrum length does not match grid");
  }
};

inline Field operator*(cplx a, const Field& f) {
  Field out(f.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = a * f.values[i];
  return out;
}

inline Field operator+(const Field& f, const Field& g) {
  if (!(f.grid == g.grid)) throw Error(Errc::invalid_params, "fields live on different grids");
  Field out(f.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = f.values[i] + g.values[i];
  return out;
}

inline Field operator-(const Field& f, const Field& g) { return f + cplx(-1.0) * g; }

inline double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace lpw
