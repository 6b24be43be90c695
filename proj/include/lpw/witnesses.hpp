#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpw/detail/sum.hpp"
#include "lpw/error.hpp"
#include "lpw/grid.hpp"
#include "lpw/lp_core.hpp"
#include "lpw/profiles.hpp"
#include "lpw/spaces.hpp"
#include "lpw/szasz.hpp"

namespace lpw {

enum class WitnessKind { modulated, modulated_borderline, dilated_low, random_bandlimited, lowfreq_blowup };

enum class ModulationWeights { linear, inverse_root };

inline const char* witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::modulated: return "modulated";
    case WitnessKind::modulated_borderline: return "modulated_borderline";
    case WitnessKind::dilated_low: return "dilated_low";
    case WitnessKind::random_bandlimited: return "random_bandlimited";
    case WitnessKind::lowfreq_blowup: return "lowfreq_blowup";
  }
  return "unknown";
}

inline std::optional<WitnessKind> parse_witness_kind(const std::string& name) {
  for (auto k : {WitnessKind::modulated, WitnessKind::modulated_borderline, WitnessKind::dilated_low,
                 WitnessKind::random_bandlimited, WitnessKind::lowfreq_blowup})
    if (name == witness_kind_name(k)) return k;
  return std::nullopt;
}

struct WitnessSpec {
  WitnessKind kind = WitnessKind::modulated;
  int K = 0;
  SzaszQuery query;
  std::uint64_t seed = 1;

  void validate() const {
    if (K < 0) throw Error(Errc::invalid_params, "K must be non-negative");
    query.validate();
  }
};

/// One row of a divergence experiment.
struct ExperimentRecord {
  int size = 0;
  double space_norm = 0.0;
  double lhs = 0.0;
  double ratio = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::optional<Error> error;
};

/// Annulus C_k = {3/4 2^k <= |xi| <= 5/4 2^k}.
inline bool in_annulus(double radial, int k) {
  const double t = std::ldexp(radial, -k);
  return t >= 0.75 && t <= 1.25;
}

namespace detail {

inline double bump_profile(double radial) { return lowpass_profile(3.0 * radial); }
inline double annulus_profile(double radial) { return lowpass_profile(6.0 * (radial - 1.0)); }

// Scale making (2 pi)^{-n} sum |c|^2 dxi^n equal to one.
inline void normalize_l2(Spectrum& s) {
  CompensatedSum acc;
  for (const auto& c : s.coeffs) acc.add(std::norm(c));
  const double mass = acc.value() * s.grid.frequency_cell() / std::pow(2.0 * std::numbers::pi, s.grid.dim());
  if (!(mass > 0.0)) throw Error(Errc::grid_too_coarse, "profile not resolved by the grid");
  const double a = 1.0 / std::sqrt(mass);
  for (auto& c : s.coeffs) c *= a;
}

inline std::size_t bins_within(const GridSpec& g, double radius) {
  return 2 * static_cast<std::size_t>(std::floor(radius / g.dxi())) + 1;
}

// C_{-K} must span kLowResolution bins and level -K must be in band.
inline void require_low_annulus(const GridSpec& g, int K) {
  if (K <= 0) return;
  if (0.75 * std::ldexp(1.0, -K) < kLowResolution * g.dxi() || -K < feasible_band(g).j_min)
    throw Error(Errc::k_exceeds_low_band, "C_{-" + std::to_string(K) + "} is below the resolved band");
}

// Sum_k c_k 2^{kn} psi^(2^k xi), i.e. sum_k c_k psi(2^{-k} x), k = 1..c.size(),
// where psi^ = scale * annulus_profile.
inline Spectrum dilated_stack_spectrum(const GridSpec& g, double scale, const std::vector<double>& c) {
  Spectrum out(g);
  const int K = static_cast<int>(c.size());
  require_low_annulus(g, K);
  for (std::size_t pos = 0; pos < out.coeffs.size(); ++pos) {
    const double rad = g.radial_frequency(pos);
    if (rad == 0.0 || rad > 0.625) continue;
    for (int k = 1; k <= K; ++k) {
      if (!in_annulus(rad, -k)) continue;
      const double v = annulus_profile(std::ldexp(rad, k));
      if (v != 0.0) out.coeffs[pos] += c[k - 1] * std::ldexp(scale, k * g.dim()) * v;
    }
  }
  return out;
}

}  // namespace detail

/// Radial bump phi^ = A phi_lp(3|xi|), supported in |xi| <= 1/2, unit L2.
inline Spectrum bump_lowpass_spectrum(const GridSpec& g) {
  if (detail::bins_within(g, 0.5) < 8 || 0.5 > kNyquistSafety * g.nyquist())
    throw Error(Errc::grid_too_coarse, "|xi| <= 1/2 needs at least 8 bins per axis");
  Spectrum s = tabulate_spectrum(g, [](double a, double b) { return cplx(detail::bump_profile(std::hypot(a, b))); });
  detail::normalize_l2(s);
  return s;
}

inline Field bump_lowpass_phi(const GridSpec& g) { return inverse_ft(bump_lowpass_spectrum(g)); }

/// Radial annulus bump psi^ = A phi_lp(6(|xi| - 1)), supported in C_0, unit L2.
inline Spectrum annulus_psi_spectrum(const GridSpec& g) {
  if (0.5 / g.dxi() < kLowResolution || 1.25 > kNyquistSafety * g.nyquist())
    throw Error(Errc::grid_too_coarse, "C_0 needs at least 4 bins across and must stay below Nyquist");
  Spectrum s =
      tabulate_spectrum(g, [](double a, double b) { return cplx(detail::annulus_profile(std::hypot(a, b))); });
  detail::normalize_l2(s);
  return s;
}

namespace detail {

// The constant A in psi^ = A phi_lp(6(|xi| - 1)).
inline double annulus_scale(const Spectrum& psi) {
  for (std::size_t pos = 0; pos < psi.coeffs.size(); ++pos)
    if (annulus_profile(psi.grid.radial_frequency(pos)) == 1.0) return psi.coeffs[pos].real();
  throw Error(Errc::grid_too_coarse, "annulus plateau not sampled");
}

}  // namespace detail

inline Field annulus_psi(const GridSpec& g) { return inverse_ft(annulus_psi_spectrum(g)); }

/// Coefficient a_k of the modulated series.
inline double modulation_weight(int k, double theta, double p, ModulationWeights w) {
  const double lead = w == ModulationWeights::linear ? static_cast<double>(k) : std::pow(k, -1.0 / p);
  return lead * std::exp2(-k * theta);
}

/// sum_{k=1}^K a_k e^{i nu_k x_1} phi(x); term k is phi^ shifted by
/// nu_k = round(2^k / dxi) dxi along xi_1, hence supported in C_k.
inline Spectrum modulated_spectrum(const GridSpec& g, const WitnessSpec& spec, ModulationWeights w) {
  spec.validate();
  const int K = spec.K;
  if (K >= 62 || (K > 0 && (1.25 * std::ldexp(1.0, K) > kNyquistSafety * g.nyquist() || K > feasible_band(g).j_max)))
    throw Error(Errc::k_exceeds_band, "C_" + std::to_string(K) + " reaches past the resolved band");
  Spectrum out(g);
  if (K == 0) return out;
  const Spectrum phi = bump_lowpass_spectrum(g);
  const double theta = spec.query.theta();
  const std::int64_t N = static_cast<std::int64_t>(g.samples());
  for (int k = 1; k <= K; ++k) {
    const auto shift = static_cast<std::int64_t>(std::llround(std::ldexp(1.0, k) / g.dxi()));
    const double a = modulation_weight(k, theta, spec.query.p, w);
    for (std::size_t pos = 0; pos < phi.coeffs.size(); ++pos) {
      if (phi.coeffs[pos] == cplx(0.0)) continue;
      const auto ax = g.axes(pos);
      const std::int64_t to = static_cast<std::int64_t>(ax[0]) + shift;
      if (to >= N) throw Error(Errc::k_exceeds_band, "modulated term leaves the frequency grid");
      out.coeffs[g.flat(static_cast<std::size_t>(to), ax[1])] += a * phi.coeffs[pos];
    }
  }
  return out;
}

inline Field modulated_witness(const GridSpec& g, const WitnessSpec& spec, ModulationWeights w) {
  return inverse_ft(modulated_spectrum(g, spec, w));
}

/// sum_k c_k psi(2^{-k} x) for k = 1..c.size(); term k lives in C_{-k}.
inline Field dilated_stack(const GridSpec& g, const std::vector<double>& c) {
  return inverse_ft(detail::dilated_stack_spectrum(g, detail::annulus_scale(annulus_psi_spectrum(g)), c));
}

/// Coefficients k^{-1/p} 2^{k(s - n/r)}: the Besov summand of term k at level
/// -k is k^{-1/p} ||psi||_r.
inline std::vector<double> dilated_coefficients(const WitnessSpec& spec, int n) {
  std::vector<double> c;
  const double s = spec.query.space.s, r = spec.query.space.r, p = spec.query.p;
  for (int k = 1; k <= spec.K; ++k) c.push_back(std::pow(k, -1.0 / p) * std::exp2(k * (s - n / r)));
  return c;
}

inline Spectrum dilated_spectrum(const GridSpec& g, const WitnessSpec& spec) {
  spec.validate();
  detail::require_low_annulus(g, spec.K);
  return detail::dilated_stack_spectrum(g, detail::annulus_scale(annulus_psi_spectrum(g)),
                                        dilated_coefficients(spec, g.dim()));
}

inline Field dilated_witness(const GridSpec& g, const WitnessSpec& spec) { return inverse_ft(dilated_spectrum(g, spec)); }

/// sum_{k=1}^M b_k psi(2^{-k} x) with b_k = 2^{k(s - n/r)/2} / ||psi||_r: the
/// level -k Besov summand is 2^{-k(s - n/r)/2} while the mass near the origin
/// grows like 2^{M(s - n/r)/2}.
inline Field lowfreq_blowup_witness(const GridSpec& g, int M, double s, double r) {
  if (M < 0) throw Error(Errc::invalid_params, "M must be non-negative");
  if (!(r > 0.0)) throw Error(Errc::invalid_params, "r must lie in (0, inf]");
  const double excess = s - g.dim() / r;
  if (!(excess > 0.0)) throw Error(Errc::invalid_params, "blowup witness needs s > n/r");
  detail::require_low_annulus(g, M);
  const Spectrum psi = annulus_psi_spectrum(g);
  const double psi_r = lr_quasinorm(inverse_ft(psi), r);
  std::vector<double> c;
  for (int k = 1; k <= M; ++k) c.push_back(std::exp2(0.5 * k * excess) / psi_r);
  return inverse_ft(detail::dilated_stack_spectrum(g, detail::annulus_scale(psi), c));
}

/// sum over xi in C_k (xi != 0) of |xi|^{theta p} |g(xi)|^p dxi^n.
inline double annulus_lhs_power(const Spectrum& g, int k, double theta, double p) {
  if (!(p > 0.0) || std::isinf(p)) throw Error(Errc::invalid_exponent, "annulus contribution needs finite p > 0");
  const GridSpec& grid = g.grid;
  detail::CompensatedSum acc;
  for (std::size_t pos = 0; pos < g.coeffs.size(); ++pos) {
    const double rad = grid.radial_frequency(pos);
    if (rad == 0.0 || !in_annulus(rad, k)) continue;
    acc.add(std::pow(rad, theta * p) * std::pow(std::abs(g.coeffs[pos]), p));
  }
  return acc.value() * grid.frequency_cell();
}

namespace detail {

inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct RandomLevel {
  Spectrum piece;
  double weight;
};

// Level j piece: gamma(2^-j |xi|) times three random wave packets, plus a
// target weight in [1/2, 1]. Seeded by (seed, j) so that levels are nested.
inline RandomLevel random_level(const GridSpec& g, std::uint64_t seed, int j) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(j + (1 << 20))};
  std::mt19937_64 rng(seq);
  constexpr int kPackets = 3;
  std::array<cplx, kPackets> amp{};
  std::array<std::array<double, 2>, kPackets> shift{};
  for (int m = 0; m < kPackets; ++m) {
    const double mod = 0.5 + 0.5 * unit_uniform(rng);
    const double arg = 2.0 * std::numbers::pi * unit_uniform(rng);
    amp[m] = std::polar(mod, arg);
    for (int d = 0; d < 2; ++d) shift[m][d] = g.length() * (unit_uniform(rng) - 0.5) / 4.0;
  }
  RandomLevel out{Spectrum(g), 0.5 + 0.5 * unit_uniform(rng)};
  for (std::size_t pos = 0; pos < out.piece.coeffs.size(); ++pos) {
    const double m = level_multiplier(g.radial_frequency(pos), j);
    if (m == 0.0) continue;
    const auto ax = g.axes(pos);
    const double x0 = static_cast<double>(g.frequency_index(ax[0])) * g.dxi();
    const double x1 = g.dim() == 2 ? static_cast<double>(g.frequency_index(ax[1])) * g.dxi() : 0.0;
    cplx v = 0.0;
    for (int p = 0; p < kPackets; ++p) v += amp[p] * std::polar(1.0, -(shift[p][0] * x0 + shift[p][1] * x1));
    out.piece.coeffs[pos] = m * v;
  }
  return out;
}

}  // namespace detail

/// Pseudo-random smooth field with spectrum in the levels j_lo..j_hi (empty
/// when j_hi < j_lo). Level j is scaled so that 2^{js} ||piece||_r lies in
/// [1/2, 1]; the sum is normalized to unit norm for `params`.
inline Field random_bandlimited(const GridSpec& g, std::uint64_t seed, int j_lo, int j_hi,
                                const SpaceParams& params = SpaceParams{}) {
  params.validate();
  Field out(g);
  if (j_hi < j_lo) return out;
  detail::require_level(g, j_lo);
  detail::require_level(g, j_hi);
  Spectrum total(g);
  for (int j = j_lo; j <= j_hi; ++j) {
    const auto [piece, weight] = detail::random_level(g, seed, j);
    const double norm = lr_quasinorm(inverse_ft(piece), params.r);
    const double a = weight * std::exp2(-j * params.s) / norm;
    for (std::size_t pos = 0; pos < total.coeffs.size(); ++pos) total.coeffs[pos] += a * piece.coeffs[pos];
  }
  out = inverse_ft(total);
  const double norm = space_norm(out, params);
  if (norm > 0.0) out = cplx(1.0 / norm) * out;
  return out;
}

/// Witness of the given kind and size for a query on a grid.
inline Field build_witness(const GridSpec& g, const WitnessSpec& spec) {
  spec.validate();
  if (spec.query.n != g.dim()) throw Error(Errc::invalid_params, "query dimension does not match the grid");
  switch (spec.kind) {
    case WitnessKind::modulated: return modulated_witness(g, spec, ModulationWeights::linear);
    case WitnessKind::modulated_borderline: return modulated_witness(g, spec, ModulationWeights::inverse_root);
    case WitnessKind::dilated_low: return dilated_witness(g, spec);
    case WitnessKind::random_bandlimited: {
      const BandLimits band = feasible_band(g);
      const int hi = band.j_min + spec.K - 1;
      if (hi > band.j_max)
        throw Error(Errc::k_exceeds_band, std::to_string(spec.K) + " levels exceed the band of " +
                                              std::to_string(band.count()));
      return random_bandlimited(g, spec.seed, band.j_min, hi, spec.query.space);
    }
    case WitnessKind::lowfreq_blowup:
      return lowfreq_blowup_witness(g, spec.K, spec.query.space.s, spec.query.space.r);
  }
  throw Error(Errc::invalid_params, "unknown witness kind");
}

/// Evaluates space norm, weighted Fourier functional and their ratio for each
/// size in order. The first failing size stops the run; earlier records are
/// kept and the error is reported alongside.
inline ExperimentResult divergence_experiment(WitnessKind kind, const SzaszQuery& query, const std::vector<int>& sizes,
                                              const GridSpec& g, std::uint64_t seed = 1) {
  query.validate();
  ExperimentResult result;
  const double theta = query.theta();
  for (int size : sizes) {
    try {
      const Field f = build_witness(g, WitnessSpec{kind, size, query, seed});
      ExperimentRecord rec;
      rec.size = size;
      rec.space_norm = space_norm(f, query.space);
      rec.lhs = weighted_lhs(forward_ft(f), theta, query.p, weight_mode(query.space.setting));
      rec.ratio = rec.space_norm > 0.0 ? rec.lhs / rec.space_norm : std::nan("");
      result.records.push_back(rec);
    } catch (const Error& e) {
      result.error = e;
      break;
    }
  }
  return result;
}

}  // namespace lpw
