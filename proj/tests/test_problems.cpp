#include <doctest.h>

#include <cmath>
#include <vector>

#include "bioopt/problems.hpp"
#include "bioopt/random.hpp"

using namespace bioopt;

TEST_CASE("power-sum bowl values") {
  CHECK(dejong(std::vector<double>{0.0, 0.0, 0.0}, 3) == 0.0);
  CHECK(dejong(std::vector<double>{1.0, 1.0}, 3) == 2.0);
  CHECK(dejong(std::vector<double>{2.0, -2.0}, 2) == 32.0);
}

TEST_CASE("power-sum bowl is even and non-negative") {
  RandomSource src(1);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(5);
    std::vector<double> neg(5);
    for (int i = 0; i < 5; ++i) {
      x[static_cast<std::size_t>(i)] = src.next_range(-256.0, 256.0);
      neg[static_cast<std::size_t>(i)] = -x[static_cast<std::size_t>(i)];
    }
    const double f = dejong(x, 3);
    CHECK(f >= 0.0);
    CHECK(f == dejong(neg, 3));
  }
}

TEST_CASE("power-sum problem rejects out-of-box points") {
  const Problem p = make_dejong(3, 256.0, 2);
  CHECK_THROWS_AS(p.objective(std::vector<double>{300.0, 0.0}),
                  std::domain_error);
}

TEST_CASE("bumpy function values") {
  CHECK(keane_bump(3.7, 3.7) == 0.0);  // sin^2(0) factor
  // direct high-precision evaluation of the formula at the customary
  // reference point (an independently computed fixture)
  CHECK(keane_bump(1.593, 0.471) ==
        doctest::Approx(0.37912391655952457).epsilon(1e-12));
  CHECK_THROWS_AS(keane_bump(-1.0, 5.0), std::domain_error);
  CHECK_THROWS_AS(keane_bump(5.0, 12.0), std::domain_error);
}

TEST_CASE("bumpy function is symmetric and non-negative") {
  RandomSource src(2);
  for (int t = 0; t < 500; ++t) {
    const double x = src.next_range(0.01, 9.99);
    const double y = src.next_range(0.01, 9.99);
    const double f = keane_bump(x, y);
    CHECK(f >= 0.0);
    CHECK(f == doctest::Approx(keane_bump(y, x)).epsilon(1e-12));
  }
}

TEST_CASE("vessel objective at the published best design") {
  const std::vector<double> x_star = {1.125, 0.625, 58.2906, 43.6926};
  // independently computed fixtures for both variants
  CHECK(vessel_objective(x_star, VesselObjective::ts_r_l) ==
        doctest::Approx(7197.808767050547).epsilon(1e-12));
  CHECK(vessel_objective(x_star, VesselObjective::ts_th_r) ==
        doctest::Approx(5440.001308609635).epsilon(1e-12));
}

TEST_CASE("vessel objective vanishes when both thicknesses are zero") {
  const std::vector<double> x = {0.0, 0.0, 58.0, 44.0};
  CHECK(vessel_objective(x, VesselObjective::ts_r_l) == 0.0);
  CHECK(vessel_objective(x, VesselObjective::ts_th_r) == 0.0);
}

TEST_CASE("vessel constraints at the published best design") {
  const std::vector<double> x_star = {1.125, 0.625, 58.2906, 43.6926};
  const auto g = vessel_constraints(x_star);
  // direct evaluation: the four-decimal print of R leaves g1 a hair above
  // zero; the other three hold with slack
  CHECK(g[0] == doctest::Approx(8.58e-6).epsilon(1e-3));
  CHECK(g[1] == doctest::Approx(-0.068907676).epsilon(1e-9));
  CHECK(g[2] == doctest::Approx(-25.4953343).epsilon(1e-6));
  CHECK(g[3] == doctest::Approx(-196.3074).epsilon(1e-12));
}

TEST_CASE("vessel constraint boundaries") {
  SUBCASE("L = 240 sits on the g4 boundary") {
    const std::vector<double> x = {1.0, 1.0, 50.0, 240.0};
    CHECK(vessel_constraints(x)[3] == 0.0);
  }
  SUBCASE("R = Ts/0.0193 sits on the g1 boundary") {
    const double ts = 1.25;
    const std::vector<double> x = {ts, 1.0, ts / 0.0193, 100.0};
    CHECK(vessel_constraints(x)[0] == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("vessel objective increases in every coordinate") {
  RandomSource src(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x = {src.next_range(1.0, 1.9), src.next_range(0.3, 1.2),
                             src.next_range(10.0, 100.0),
                             src.next_range(10.0, 100.0)};
    const double f0 = vessel_objective(x);
    for (std::size_t i = 0; i < 4; ++i) {
      auto bumped = x;
      bumped[i] += 0.1;
      CHECK(vessel_objective(bumped) > f0);
    }
  }
}

TEST_CASE("44-bit vessel layout represents the published best design") {
  const GenomeLayout layout = vessel_layout();
  CHECK(layout.total_bits() == 44);
  const std::vector<double> x_star = {1.125, 0.625, 58.2906, 43.6926};
  const auto decoded = decode(encode(x_star, layout), layout);
  CHECK(decoded[0] == 1.125);  // discrete multiples are exact
  CHECK(decoded[1] == 0.625);
  const double half_step = 90.0 / ((1 << 18) - 1) / 2.0;
  CHECK(std::abs(decoded[2] - 58.2906) <= half_step);
  CHECK(std::abs(decoded[3] - 43.6926) <= half_step);
}

TEST_CASE("bump problem box stays inside the open domain") {
  const Problem p = make_keane_bump();
  for (const auto& [lo, hi] : p.bounds) {
    CHECK(lo > 0.0);
    CHECK(hi < 10.0);
  }
  // the customary starting point is feasible
  const auto g = p.constraint_values(std::vector<double>{5.0, 5.0});
  CHECK(is_feasible(g));
}
