#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "lpw/presets.hpp"
#include "lpw/realization.hpp"
#include "lpw/witnesses.hpp"
#include "oracles.hpp"

using namespace lpw;
using Catch::Approx;

namespace {

// Levels -4 .. 4.
GridSpec mid() { return GridSpec::make(1, std::size_t{1} << 14, 1024.0); }

SzaszQuery query(Family fam, double s, double r, double q, double p = 2.0) {
  return {SpaceParams{s, r, q, fam, Setting::homogeneous}, p, 1};
}

Field gaussian_mix(const GridSpec& g) {
  return tabulate_field(g, [](double x, double) { return std::exp(-x * x / 8.0) * cplx(1.0, 0.3 * x); });
}

double max_diff(const Field& a, const Field& b) { return max_abs((a - b).values); }

}  // namespace

TEST_CASE("sigma0 partial sums") {
  const auto g = mid();
  REQUIRE(feasible_band(g).j_min == -4);
  REQUIRE(feasible_band(g).j_max == 4);
  CHECK(max_abs(sigma0_partial(Field(g), 3).values) == 0.0);

  SECTION("band-limited fields are reproduced") {
    const Spectrum s = tabulate_spectrum(g, [](double a, double) {
      return oracle::lowpass(6.0 * (std::abs(a) - 1.0)) * cplx(1.0 + 0.3 * a, -0.2);
    });
    const Field f = inverse_ft(s);
    CHECK(max_diff(sigma0_partial(f, 2), f) < 1e-10 * max_abs(f.values));
  }

  SECTION("telescoping") {
    const Field f = gaussian_mix(g);
    for (int M = 0; M < 4; ++M) {
      const Field inc = sigma0_partial(f, M + 1) - sigma0_partial(f, M);
      const Field pieces = lp_project(f, -(M + 1)) + lp_project(f, M + 1);
      CHECK(max_diff(inc, pieces) < 1e-12 * max_abs(f.values));
    }
  }

  SECTION("commutes with grid translations") {
    const Field f = gaussian_mix(g);
    const std::vector<double> a{-37.0 * g.dx()};
    const Field lhs = sigma0_partial(grid_translate(f, a), 3);
    const Field rhs = grid_translate(sigma0_partial(f, 3), a);
    CHECK(max_diff(lhs, rhs) < 1e-12 * max_abs(f.values));
  }

  SECTION("band errors") {
    const auto coarse = GridSpec::make(1, std::size_t{1} << 14, 4.0);
    REQUIRE(feasible_band(coarse).j_min > 2);
    try {
      sigma0_partial(gaussian_mix(coarse), 2);
      FAIL("expected level_out_of_band");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::level_out_of_band);
    }
    CHECK_THROWS_AS(sigma0_partial(gaussian_mix(g), -1), Error);
  }
}

TEST_CASE("low-frequency mass") {
  const auto g = mid();
  CHECK(low_frequency_mass(Field(g), 1.0) == 0.0);

  const Spectrum high = tabulate_spectrum(g, [](double a, double) {
    return cplx(oracle::lowpass(std::abs(a) / 6.0) - oracle::lowpass(std::abs(a) / 3.0));
  });
  CHECK(low_frequency_mass(high, 1.0) == 0.0);

  try {
    low_frequency_mass(high, g.dxi());
    FAIL("expected radius_below_resolution");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::radius_below_resolution);
  }

  // Gaussian: sum over 0 < |xi_k| <= R with R half a bin past xi_K is a
  // midpoint rule for the integral over [dxi/2, R].
  const Field gauss = tabulate_field(g, [](double x, double) { return cplx(std::exp(-0.5 * x * x)); });
  const double R = (100 + 0.5) * g.dxi();
  const double expect =
      2.0 * oracle::simpson([](double t) { return std::sqrt(2.0 * oracle::pi) * std::exp(-0.5 * t * t); }, 0.5 * g.dxi(), R);
  CHECK(low_frequency_mass(gauss, R) == Approx(expect).epsilon(1e-5));
}

TEST_CASE("realization feasibility") {
  CHECK(realization_feasible(query(Family::B, 0, 2, 2)));
  CHECK(realization_feasible(query(Family::B, 0.5, 2, 1)));
  CHECK_FALSE(realization_feasible(query(Family::F, 0.5, 2, 0.5)));
  CHECK_FALSE(realization_feasible(query(Family::B, 0.5, 2, 1.5)));
  CHECK(realization_feasible(query(Family::F, 1.0, 1.0, 3.0)));
  CHECK_FALSE(realization_feasible(query(Family::B, 2, 2, 2)));
}

TEST_CASE("strong verdict is weak and feasible") {
  std::mt19937_64 rng(7);
  const std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 3.0, 4.0, kInf};
  auto pick = [&](const std::vector<double>& v) { return v[rng() % v.size()]; };
  for (int i = 0; i < 10000; ++i) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const double r = pick({0.5, 1.0, 4.0 / 3.0, 2.0, 3.0, 4.0});
    const double s = std::ldexp(static_cast<double>(rng() % 9), -2) * n - 0.5;
    const auto q = SzaszQuery{SpaceParams{s, r, pick(grid), rng() % 2 ? Family::B : Family::F, Setting::homogeneous},
                              pick(grid), n};
    const auto c = classify(q);
    REQUIRE(c.strong == (c.weak && realization_feasible(q)));
  }
}

TEST_CASE("convergence dichotomy of the low-frequency mass") {
  const auto g = *grid_preset("lo-band");

  // s < n/r: a fixed field; masses of sigma0 partial sums settle.
  std::vector<double> c;
  for (int k = 1; k <= 8; ++k) c.push_back(std::exp2(-k / 4.0));
  const Field u = dilated_stack(g, c);
  std::vector<double> calm;
  for (int M = 1; M <= 10; ++M) calm.push_back(low_frequency_mass(sigma0_partial(u, M), 1.0));
  for (int M = 1; M < 8; ++M) CHECK(calm[M] > calm[M - 1]);
  CHECK(std::abs(calm[8] - calm[7]) < 1e-6);
  CHECK(std::abs(calm[9] - calm[8]) < 1e-6);

  // s > n/r: the blowup witness mass grows geometrically while its norm stays put.
  const auto sp = SpaceParams::besov(2, 2, 2);
  std::vector<double> mass, norm;
  for (int M = 1; M <= 8; ++M) {
    const Field f = lowfreq_blowup_witness(g, M, 2, 2);
    mass.push_back(low_frequency_mass(sigma0_partial(f, M), 1.0));
    norm.push_back(besov_norm(f, sp));
  }
  for (int M = 2; M <= 8; ++M) CHECK(mass[M - 1] / mass[M - 2] > 1.6);
  for (int M = 3; M <= 8; ++M) CHECK(std::abs(norm[M - 1] / norm[1] - 1.0) < 0.1);
}

TEST_CASE("reports") {
  const auto g = mid();
  const Field f = gaussian_mix(g);
  const auto q = SzaszQuery{SpaceParams::triebel(0.25, 2, 3), 2.0, 1};
  const auto rep = realization_report(f, q, 3);
  const Field partial = sigma0_partial(f, 3);
  CHECK(rep.M == 3);
  CHECK(rep.R == 1.0);
  CHECK(rep.low_mass == low_frequency_mass(partial, 1.0));
  CHECK(rep.besov == besov_norm(partial, SpaceParams::besov(0.25, 2, 3)));
  CHECK(rep.feasible == realization_feasible(q));

  const auto sweep = realization_sweep(f, q, 3);
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[0].R == 0.25);
  CHECK(sweep[2].R == 4.0);
  CHECK(sweep[1].low_mass == rep.low_mass);
  CHECK(sweep[0].low_mass <= sweep[1].low_mass);
  CHECK(sweep[1].low_mass <= sweep[2].low_mass);
  for (const auto& r : sweep) CHECK(r.besov == rep.besov);

  CHECK_THROWS_AS(realization_report(f, SzaszQuery{SpaceParams::besov(0, 2, 2), -1.0, 1}, 3), Error);
}
