#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "lpw/spaces.hpp"
#include "oracles.hpp"

using namespace lpw;
using Catch::Approx;

namespace {

GridSpec small() { return GridSpec::make(1, 4096, 64.0); }

// Level-j0 pure band (gamma = 1 on its support), complex and asymmetric.
Field pure_band(const GridSpec& g, int j0) {
  return inverse_ft(tabulate_spectrum(g, [j0](double a, double b) {
    const double t = std::ldexp(std::hypot(a, b), -j0);
    const double m = oracle::lowpass((t - 0.875) / 0.08);
    return m * cplx(1.0 + 0.4 * std::sin(a), 0.3 * std::cos(2.0 * a));
  }));
}

// Smooth complex field with spectrum in C_0 straddling levels 0 and 1.
Field straddling(const GridSpec& g) {
  return inverse_ft(tabulate_spectrum(g, [](double a, double b) {
    const double m = oracle::lowpass(4.0 * (std::hypot(a, b) - 1.0));
    return m * cplx(1.0 + 0.5 * std::cos(3.0 * a) + 0.4 * std::sin(2.0 * a), 0.3 * std::cos(a));
  }));
}

bool near_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("L_r quasi-norm") {
  const auto g = small();
  CHECK(lr_quasinorm(Field(g), 2.0) == 0.0);
  Field ind(g);
  for (int i = 100; i < 150; ++i) ind.values[i] = cplx(0.0, 3.0);
  CHECK(lr_quasinorm(ind, 2.0) == Approx(3.0 * std::sqrt(50 * g.dx())).epsilon(1e-14));
  CHECK(lr_quasinorm(ind, 0.5) == Approx(3.0 * std::pow(50 * g.dx(), 2.0)).epsilon(1e-13));
  CHECK(lr_quasinorm(ind, kInf) == 3.0);
  const Field gauss = tabulate_field(g, [](double x, double) { return cplx(std::exp(-0.5 * x * x)); });
  CHECK(std::abs(lr_quasinorm(gauss, 2.0) - std::pow(oracle::pi, 0.25)) < 1e-6);
  CHECK(std::abs(lr_quasinorm(gauss, 1.0) - std::sqrt(2.0 * oracle::pi)) < 1e-6);
  CHECK_THROWS_AS(lr_quasinorm(gauss, 0.0), Error);
  CHECK_THROWS_AS(lr_quasinorm(gauss, -2.0), Error);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SpaceParams::triebel(0, kInf, 2).validate(), Error);
  CHECK_THROWS_AS(SpaceParams::besov(0, 0, 2).validate(), Error);
  CHECK_THROWS_AS(SpaceParams::besov(0, 2, -1).validate(), Error);
  CHECK_NOTHROW(SpaceParams::besov(0, kInf, kInf).validate());
  const Field f = pure_band(small(), 2);
  CHECK_THROWS_AS(besov_norm(f, SpaceParams::triebel(0, 2, 2)), Error);
  CHECK_THROWS_AS(triebel_norm(f, SpaceParams::besov(0, 2, 2)), Error);
  CHECK_THROWS_AS(triebel_norm(f, SpaceParams::triebel(0, kInf, 2)), Error);
}

TEST_CASE("zero field has zero norms") {
  const auto g = small();
  CHECK(besov_norm(Field(g), SpaceParams::besov(1, 2, 2)) == 0.0);
  CHECK(triebel_norm(Field(g), SpaceParams::triebel(1, 2, 3)) == 0.0);
  CHECK(besov_norm(Field(g), SpaceParams::besov(1, 2, 2, Setting::inhomogeneous)) == 0.0);
}

TEST_CASE("single band norms reduce to L_r norms") {
  const auto g = small();
  for (int j0 : {1, 3, 5}) {
    const Field f = pure_band(g, j0);
    for (double r : {0.7, 1.0, 2.0, 3.0}) {
      for (double s : {-1.0, 0.0, 0.75}) {
        const double ref = std::exp2(j0 * s) * lr_quasinorm(f, r);
        CHECK(near_rel(besov_norm(f, SpaceParams::besov(s, r, 1.5)), ref, 1e-12));
        CHECK(near_rel(triebel_norm(f, SpaceParams::triebel(s, r, 4.0)), ref, 1e-12));
        CHECK(near_rel(triebel_norm(f, SpaceParams::triebel(s, r, kInf)), ref, 1e-12));
      }
    }
  }
}

TEST_CASE("F equals B when q = r") {
  const auto g = small();
  const Field f = straddling(g) + pure_band(g, 4);
  for (double r : {0.8, 1.0, 2.0, 3.5}) {
    const double b = besov_norm(f, SpaceParams::besov(0.3, r, r));
    const double t = triebel_norm(f, SpaceParams::triebel(0.3, r, r));
    CHECK(std::abs(t - b) <= 1e-12 * b);
  }
}

TEST_CASE("absolute homogeneity and translation invariance") {
  const auto g = small();
  const Field f = straddling(g) + cplx(0.5) * pure_band(g, 3);
  const cplx alpha(-2.5, 1.5);
  const std::vector<double> shift{123.0 * g.dx()};
  for (const auto& p : {SpaceParams::besov(0.5, 1.5, 2.0), SpaceParams::triebel(-0.5, 1.0, 3.0),
                        SpaceParams::besov(1.0, 2.0, 1.0, Setting::inhomogeneous),
                        SpaceParams::triebel(0.0, 2.0, kInf, Setting::inhomogeneous)}) {
    const double base = space_norm(f, p);
    CHECK(near_rel(space_norm(alpha * f, p), std::abs(alpha) * base, 1e-13));
    CHECK(near_rel(space_norm(grid_translate(f, shift), p), base, 1e-10));
  }
}

TEST_CASE("Besov norm is non-increasing in q") {
  const auto g = small();
  const Field f = straddling(g) + pure_band(g, 3) + cplx(0.2) * pure_band(g, 5);
  double prev = kInf;
  for (double q : {0.5, 1.0, 2.0, kInf}) {
    const double v = besov_norm(f, SpaceParams::besov(0.2, 1.5, q));
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("dyadic scaling law") {
  const auto g = GridSpec::make(1, std::size_t{1} << 18, 16384.0);
  const Field f = straddling(g);
  for (const auto& p : {SpaceParams::besov(0.0, 2.0, 2.0), SpaceParams::besov(0.5, 1.0, 3.0),
                        SpaceParams::triebel(-0.3, 1.5, 2.0), SpaceParams::triebel(1.0, 3.0, 1.0)}) {
    const double base = space_norm(f, p);
    for (int m : {-2, -1, 1, 2}) {
      const double expect = std::exp2(m * (1.0 / p.r - p.s)) * base;
      CHECK(near_rel(space_norm(dyadic_dilate(f, m), p), expect, 1e-3));
    }
  }
}

TEST_CASE("inhomogeneous low-pass piece") {
  const auto g = small();
  const Field low = inverse_ft(tabulate_spectrum(g, [](double a, double) {
    return cplx(oracle::lowpass(std::abs(a) / 0.6), 0.2 * a * oracle::lowpass(std::abs(a) / 0.6));
  }));
  for (double r : {1.0, 2.0}) {
    CHECK(near_rel(besov_norm(low, SpaceParams::besov(3.0, r, 2.0, Setting::inhomogeneous)), lr_quasinorm(low, r),
                   1e-12));
    CHECK(near_rel(triebel_norm(low, SpaceParams::triebel(3.0, r, 2.0, Setting::inhomogeneous)),
                   lr_quasinorm(low, r), 1e-12));
  }
  // The homogeneous norm of a field with k = 0 content ignores that bin.
  Field c(g);
  for (auto& v : c.values) v = 1.0;
  CHECK(besov_norm(c, SpaceParams::besov(0, 2, 2)) < 1e-12);
  CHECK(besov_norm(c, SpaceParams::besov(0, 2, 2, Setting::inhomogeneous)) == Approx(8.0).epsilon(1e-12));
}

TEST_CASE("validation warnings") {
  const auto g = small();
  const Field packet = tabulate_field(g, [](double x, double) { return std::polar(std::exp(-0.5 * x * x), 10.0 * x); });
  CHECK(norm_warnings(packet, Setting::homogeneous).empty());
  // Compact spectrum: slow spatial decay, so the box edge is flagged.
  CHECK(norm_warnings(pure_band(g, 3), Setting::homogeneous).size() == 1);
  Field spike(g);
  spike.values[5] = 1.0;
  const auto w = norm_warnings(spike, Setting::homogeneous);
  CHECK(w.size() == 2);
  CHECK(uncovered_spectral_fraction(forward_ft(pure_band(g, 3)), Setting::homogeneous) < 1e-14);
}
