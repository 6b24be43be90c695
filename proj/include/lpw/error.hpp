#pragma once

#include <stdexcept>
#include <string>

namespace lpw {

enum class Errc {
  invalid_grid,
  grid_too_coarse,
  level_out_of_band,
  dilation_escapes_grid,
  non_grid_shift,
  invalid_exponent,
  invalid_params,
  zero_denominator,
  k_exceeds_band,
  k_exceeds_low_band,
  radius_below_resolution,
};

inline const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_grid: return "invalid grid";
    case Errc::grid_too_coarse: return "grid too coarse";
    case Errc::level_out_of_band: return "level out of band";
    case Errc::dilation_escapes_grid: return "dilation escapes grid";
    case Errc::non_grid_shift: return "non-grid shift";
    case Errc::invalid_exponent: return "invalid exponent";
    case Errc::invalid_params: return "invalid params";
    case Errc::zero_denominator: return "zero denominator";
    case Errc::k_exceeds_band: return "K exceeds band";
    case Errc::k_exceeds_low_band: return "K exceeds low band";
    case Errc::radius_below_resolution: return "radius below resolution";
  }
  return "unknown error";
}

/// True when the failure comes from the grid not resolving what was asked
/// (as opposed to malformed input).
inline bool is_numerical(Errc code) noexcept {
  switch (code) {
    case Errc::grid_too_coarse:
    case Errc::level_out_of_band:
    case Errc::dilation_escapes_grid:
    case Errc::k_exceeds_band:
    case Errc::k_exceeds_low_band:
    case Errc::radius_below_resolution:
    case Errc::zero_denominator:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lpw
