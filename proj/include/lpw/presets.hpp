#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "lpw/grid.hpp"

namespace lpw {

/// Named grids used by the experiment harness.
///
/// | name    | n | N    | L    | levels    | intended for                         |
/// |---------|---|------|------|-----------|--------------------------------------|
/// | hi-band | 1 | 2^21 | 16 pi| 0 .. 16   | modulated series up to C_16          |
/// | lo-band | 1 | 2^20 | 2^16 | -10 .. 4  | low-frequency dilations down to C_-10|
/// | small   | 1 | 2^14 | 16 pi| 0 .. 9    | quick checks                         |
/// | plane   | 2 | 512  | 128  | -1 .. 2   | two-dimensional checks               |
struct GridPreset {
  std::string_view name;
  int dim;
  std::size_t samples;
  double length;
};

inline constexpr std::array<GridPreset, 4> kGridPresets{{
    {"hi-band", 1, std::size_t{1} << 21, 16.0 * std::numbers::pi},
    {"lo-band", 1, std::size_t{1} << 20, 65536.0},
    {"small", 1, std::size_t{1} << 14, 16.0 * std::numbers::pi},
    {"plane", 2, 512, 128.0},
}};

inline std::optional<GridSpec> grid_preset(std::string_view name) {
  for (const auto& p : kGridPresets)
    if (p.name == name) return GridSpec::make(p.dim, p.samples, p.length);
  return std::nullopt;
}

}  // namespace lpw
