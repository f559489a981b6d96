#include "bioopt/problems.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <stdexcept>

namespace bioopt {

namespace {

// Even power by squaring; exact for integer exponents, unlike
// std::pow on some platforms.
double even_power(double x, int alpha) {
  double base = x * x;
  double result = 1.0;
  for (int k = 0; k < alpha; ++k) result *= base;
  return result;
}

}  // namespace

double dejong(std::span<const double> x, int alpha) {
  if (alpha < 1) throw std::invalid_argument("dejong: alpha must be >= 1");
  double sum = 0.0;
  for (double xi : x) sum += even_power(xi, alpha);
  return sum;
}

double keane_bump(double x, double y) {
  if (!(x > 0.0) || x >= 10.0 || !(y > 0.0) || y >= 10.0) {
    // continuity limit at the origin; everywhere else out of domain
    if (x == 0.0 && y == 0.0) return 0.0;
    throw std::domain_error(
        fmt::format("keane_bump: ({}, {}) outside 0 < x, y < 10", x, y));
  }
  const double s1 = std::sin(x - y);
  const double s2 = std::sin(x + y);
  return s1 * s1 * s2 * s2 / std::sqrt(x * x + y * y);
}

double vessel_objective(std::span<const double> x, VesselObjective variant) {
  const double ts = x[0], th = x[1], r = x[2], l = x[3];
  const double first = variant == VesselObjective::ts_r_l
                           ? 0.6224 * ts * r * l
                           : 0.6224 * ts * th * r;
  return first + 1.7781 * th * r * r + 3.1611 * ts * ts * l +
         19.84 * ts * ts * r;
}

std::array<double, 4> vessel_constraints(std::span<const double> x) {
  const double ts = x[0], th = x[1], r = x[2], l = x[3];
  constexpr double pi = std::numbers::pi;
  return {
      -ts + 0.0193 * r,
      -th + 0.00954 * r,
      -pi * r * r * l - 4.0 * pi * r * r * r / 3.0 + 1296000.0,
      l - 240.0,
  };
}

Problem make_dejong(int alpha, double half_length, int dimension) {
  if (!(half_length > 0.0)) {
    throw std::invalid_argument("dejong: half_length must be > 0");
  }
  if (dimension < 1) throw std::invalid_argument("dejong: dimension < 1");
  Problem p;
  p.name = fmt::format("dejong(alpha={}, r={}, n={})", alpha, half_length,
                       dimension);
  p.dimension = dimension;
  p.sense = Problem::Sense::minimize;
  p.bounds.assign(static_cast<std::size_t>(dimension),
                  {-half_length, half_length});
  p.objective = [alpha, half_length](std::span<const double> x) {
    for (double xi : x) {
      if (std::abs(xi) > half_length) {
        throw std::domain_error(fmt::format(
            "dejong: |{}| exceeds half-length {}", xi, half_length));
      }
    }
    return dejong(x, alpha);
  };
  return p;
}

Problem make_keane_bump() {
  // The box stays strictly inside the open domain so every decoded genome
  // is a valid argument.
  constexpr double kMargin = 1e-4;
  Problem p;
  p.name = "bump";
  p.dimension = 2;
  p.sense = Problem::Sense::maximize;
  p.bounds = {{kMargin, 10.0 - kMargin}, {kMargin, 10.0 - kMargin}};
  p.objective = [](std::span<const double> x) {
    return keane_bump(x[0], x[1]);
  };
  p.constraints = {
      [](std::span<const double> x) { return x[0] + x[1] - 15.0; },
      [](std::span<const double> x) { return 0.75 - x[0] * x[1]; },
  };
  return p;
}

Problem make_vessel(VesselObjective variant) {
  Problem p;
  p.name = "vessel";
  p.dimension = 4;
  p.sense = Problem::Sense::minimize;
  p.bounds = {{1.0, 1.9375}, {0.3125, 1.25}, {10.0, 100.0}, {10.0, 100.0}};
  p.objective = [variant](std::span<const double> x) {
    return vessel_objective(x, variant);
  };
  p.constraints = {
      [](std::span<const double> x) { return vessel_constraints(x)[0]; },
      [](std::span<const double> x) { return vessel_constraints(x)[1]; },
      [](std::span<const double> x) { return vessel_constraints(x)[2]; },
      [](std::span<const double> x) { return vessel_constraints(x)[3]; },
  };
  return p;
}

GenomeLayout vessel_layout() {
  GenomeLayout layout;
  layout.fields = {
      FieldSpec::discrete_field(4, 0.0625, 16),  // Ts in [1.0, 1.9375]
      FieldSpec::discrete_field(4, 0.0625, 5),   // Th in [0.3125, 1.25]
      FieldSpec::continuous_field(18, 10.0, 100.0),  // R
      FieldSpec::continuous_field(18, 10.0, 100.0),  // L
  };
  return layout;
}

GenomeLayout layout_for_problem(const Problem& problem, int bits_per_var) {
  GenomeLayout layout;
  layout.fields.reserve(problem.bounds.size());
  for (const auto& [lo, hi] : problem.bounds) {
    layout.fields.push_back(
        FieldSpec::continuous_field(bits_per_var, lo, hi));
  }
  return layout;
}

}  // namespace bioopt
