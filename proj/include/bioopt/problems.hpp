//! Closed-form benchmark problems: the generalized power-sum bowl, the
//! constrained bumpy maximization problem, and the pressure-vessel design
//! problem.

#ifndef BIOOPT_PROBLEMS_HPP
#define BIOOPT_PROBLEMS_HPP

#include <array>
#include <span>

#include "bioopt/encoding.hpp"
#include "bioopt/problem.hpp"

namespace bioopt {

/// sum_i x_i^(2*alpha). Minimum 0 at the origin.
double dejong(std::span<const double> x, int alpha);

/// sin^2(x-y) * sin^2(x+y) / sqrt(x^2 + y^2) on 0 < x, y < 10, extended by
/// continuity with value 0 at the origin. Used as a maximization problem
/// subject to x + y <= 15 and x*y >= 3/4.
double keane_bump(double x, double y);

enum class VesselObjective {
  // 0.6224*Ts*R*L + 1.7781*Th*R^2 + 3.1611*Ts^2*L + 19.84*Ts^2*R
  ts_r_l,
  // First term replaced by 0.6224*Ts*Th*R, a variant that circulates in
  // print; kept selectable for comparison runs.
  ts_th_r,
};

/// Vessel cost for x = (Ts, Th, R, L).
double vessel_objective(std::span<const double> x,
                        VesselObjective variant = VesselObjective::ts_r_l);

/// g1..g4, feasible iff all <= 0:
///   g1 = -Ts + 0.0193 R, g2 = -Th + 0.00954 R,
///   g3 = -pi R^2 L - 4 pi R^3 / 3 + 1296000, g4 = L - 240.
std::array<double, 4> vessel_constraints(std::span<const double> x);

Problem make_dejong(int alpha, double half_length, int dimension);
Problem make_keane_bump();
Problem make_vessel(VesselObjective variant = VesselObjective::ts_r_l);

/// Default 44-bit genome for the vessel problem: Ts and Th are 4-bit
/// multiples of 0.0625 (offsets 16 and 5, covering [1.0, 1.9375] and
/// [0.3125, 1.25]); R and L are 18-bit continuous on [10, 100].
GenomeLayout vessel_layout();

/// Uniform continuous layout (bits per variable) matching a problem's box.
GenomeLayout layout_for_problem(const Problem& problem, int bits_per_var);

}  // namespace bioopt

#endif  // BIOOPT_PROBLEMS_HPP
