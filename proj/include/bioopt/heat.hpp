//! Explicit finite-difference solver for the variable-diffusivity heat
//! equation du/dt = div(kappa grad u) on the unit square, plus the
//! percent-scale L1 error metrics and the real-coded-GA inverse estimation
//! of the diffusivity grid.
//!
//! Discretization: n x n cell centers (h = 1/n), flux form with
//! arithmetic-mean face diffusivities, forward Euler. Walls are held at
//! u = 0 (a wall face uses the boundary cell's own kappa). The scheme obeys
//! the discrete maximum principle when dt <= h^2 / (4 max kappa).

#ifndef BIOOPT_HEAT_HPP
#define BIOOPT_HEAT_HPP

#include <array>
#include <vector>

#include "bioopt/ga.hpp"
#include "bioopt/random.hpp"
#include "bioopt/trace.hpp"

namespace bioopt {

struct DiffusivityField {
  int n = 0;
  std::vector<double> kappa;  // row-major, kappa[i*n + j] > 0

  DiffusivityField() = default;
  DiffusivityField(int grid, double fill)
      : n(grid), kappa(static_cast<std::size_t>(grid) * grid, fill) {}

  double& at(int i, int j) { return kappa[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const {
    return kappa[static_cast<std::size_t>(i) * n + j];
  }
  double max_kappa() const;
  void validate() const;
};

struct TemperatureField {
  int n = 0;
  double time = 0.0;
  std::vector<double> u;  // row-major

  double& at(int i, int j) { return u[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const {
    return u[static_cast<std::size_t>(i) * n + j];
  }
};

struct MeasurementSet {
  std::array<TemperatureField, 3> snapshots;  // times strictly increasing
};

/// u = 1 everywhere at t = 0 (walls are enforced by the stepping, not
/// stored).
TemperatureField initial_field(int n);

/// Largest admissible explicit step, h^2 / (4 max kappa).
double stability_limit(const DiffusivityField& kappa);

/// dt that divides t1 evenly and respects 0.9 x the stability limit for
/// diffusivities up to kappa_max.
double pick_dt(int n, double kappa_max, double t1);

/// One forward-Euler update. Throws when dt exceeds the stability limit,
/// reporting the admissible value.
TemperatureField step(const TemperatureField& u, const DiffusivityField& kappa,
                      double dt);

/// Snapshots at the three times (each must be a multiple of dt), starting
/// from the unit initial field.
MeasurementSet simulate(const DiffusivityField& kappa,
                        const std::array<double, 3>& times, double dt);

inline constexpr double kErrorScale = 100.0;  // percent scale

/// kErrorScale * sum |measured - computed| / sum |measured|, aggregated
/// over all grid points of all three snapshots.
double error_u(const MeasurementSet& measured, const MeasurementSet& computed);

/// Same metric over the single diffusivity grid.
double error_kappa(const DiffusivityField& known,
                   const DiffusivityField& predicted);

/// Smooth synthetic target: 0.5 + two gaussian bumps of height 0.9 at
/// (0.3, 0.3) and (0.7, 0.7), length scale 0.2. Values stay in [0.5, 2.0].
DiffusivityField two_bump_target(int n);

struct IvbvOptions {
  std::array<double, 3> times = {0.01, 0.02, 0.04};
  double kappa_lo = 0.1;
  double kappa_hi = 5.0;
  // Time step shared by every candidate simulation. 0 derives it from
  // kappa_hi and times[0]; pass the step the measurements were generated
  // with so a perfect candidate reproduces them exactly.
  double dt = 0.0;
};

struct IvbvResult {
  DiffusivityField estimate;
  RunTrace trace;
};

/// Recovers the diffusivity grid from the measured snapshots with the
/// real-coded GA (one gene per cell). When `known` is given (synthetic
/// runs), each generation's best also carries its diffusivity error in the
/// trace aux column.
IvbvResult ivbv_inverse(const MeasurementSet& measured,
                        const IvbvOptions& options, const RealGaConfig& cfg,
                        RandomSource& src,
                        const DiffusivityField* known = nullptr);

}  // namespace bioopt

#endif  // BIOOPT_HEAT_HPP
