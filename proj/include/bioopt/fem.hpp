//! Plane-stress finite-element forward solver for a fixed five-node,
//! four-element cantilever-style panel, and the photosynthetic-search
//! inverse estimation of per-element (E, nu).
//!
//! Geometry (unit lengths): a 10 x 5 rectangle with a center node,
//!   node 0 (0,0), node 1 (0,5), node 2 (10,5), node 3 (10,0),
//!   node 4 (5, 2.5);
//! four constant-strain triangles, each joining one rectangle edge to the
//! center node. Nodes 0 and 1 are fixed; a unit downward load acts at
//! node 3. Element thickness is 1.

#ifndef BIOOPT_FEM_HPP
#define BIOOPT_FEM_HPP

#include <Eigen/Dense>
#include <array>

#include "bioopt/pa.hpp"
#include "bioopt/random.hpp"
#include "bioopt/trace.hpp"

namespace bioopt {

/// (E1, nu1, E2, nu2, E3, nu3, E4, nu4)
using MaterialVector = std::array<double, 8>;

/// (u0, v0, ..., u4, v4)
using DisplacementVector = std::array<double, 10>;

struct FemModel {
  std::array<std::array<double, 2>, 5> nodes;
  std::array<std::array<int, 3>, 4> elements;
  std::array<double, 4> youngs;
  std::array<double, 4> poissons;
  std::array<int, 4> fixed_dofs;
  int load_dof = 0;
  double load = 0.0;
};

/// The documented beam panel with the given materials.
FemModel beam_model(const MaterialVector& materials);

/// Search box of the inverse problem.
inline constexpr double kModulusLow = 100.0;
inline constexpr double kModulusHigh = 1000.0;
inline constexpr double kPoissonLow = 0.05;
inline constexpr double kPoissonHigh = 0.45;

/// Constant-strain-triangle stiffness (plane stress, unit thickness).
/// Node order is reversed internally when the triangle is clockwise.
Eigen::Matrix<double, 6, 6> element_stiffness(
    const std::array<std::array<double, 2>, 3>& coords, double youngs,
    double poisson);

Eigen::Matrix<double, 10, 10> assemble(const FemModel& model);

/// Partial-pivoting dense solve of the constrained system; fixed dofs are
/// exactly zero in the result.
DisplacementVector solve_displacements(const FemModel& model);

/// Sum of squared differences over the free dofs.
double displacement_misfit(const DisplacementVector& computed,
                           const DisplacementVector& measured);

struct FemInverseResult {
  MaterialVector estimate;
  RunTrace trace;
};

/// Estimates the eight material parameters from measured displacements by
/// running the photosynthetic search over the (E, nu) box.
FemInverseResult fem_inverse(const DisplacementVector& measured,
                             const PaConfig& cfg, RandomSource& src);

}  // namespace bioopt

#endif  // BIOOPT_FEM_HPP
