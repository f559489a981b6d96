#include "bioopt/fem.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace bioopt {

FemModel beam_model(const MaterialVector& materials) {
  FemModel m;
  m.nodes = {{{0.0, 0.0}, {0.0, 5.0}, {10.0, 5.0}, {10.0, 0.0}, {5.0, 2.5}}};
  m.elements = {{{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}};
  for (int e = 0; e < 4; ++e) {
    m.youngs[e] = materials[static_cast<std::size_t>(2 * e)];
    m.poissons[e] = materials[static_cast<std::size_t>(2 * e + 1)];
    if (!(m.youngs[e] > 0.0)) {
      throw std::invalid_argument("beam_model: E must be > 0");
    }
    if (!(m.poissons[e] > 0.0) || !(m.poissons[e] < 0.5)) {
      throw std::invalid_argument("beam_model: nu must be in (0, 0.5)");
    }
  }
  m.fixed_dofs = {0, 1, 2, 3};  // nodes 0 and 1 clamped
  m.load_dof = 7;               // v at node 3
  m.load = -1.0;                // unit downward load
  return m;
}

Eigen::Matrix<double, 6, 6> element_stiffness(
    const std::array<std::array<double, 2>, 3>& coords, double youngs,
    double poisson) {
  auto c = coords;
  double two_a = (c[1][0] - c[0][0]) * (c[2][1] - c[0][1]) -
                 (c[2][0] - c[0][0]) * (c[1][1] - c[0][1]);
  // orientation fix: flip the last two nodes of a clockwise triangle
  bool flipped = false;
  if (two_a < 0.0) {
    std::swap(c[1], c[2]);
    two_a = -two_a;
    flipped = true;
  }
  if (!(two_a > 1e-12)) {
    throw std::invalid_argument("element_stiffness: degenerate triangle");
  }

  const double b[3] = {c[1][1] - c[2][1], c[2][1] - c[0][1],
                       c[0][1] - c[1][1]};
  const double q[3] = {c[2][0] - c[1][0], c[0][0] - c[2][0],
                       c[1][0] - c[0][0]};

  Eigen::Matrix<double, 3, 6> strain_op = Eigen::Matrix<double, 3, 6>::Zero();
  for (int i = 0; i < 3; ++i) {
    strain_op(0, 2 * i) = b[i];
    strain_op(1, 2 * i + 1) = q[i];
    strain_op(2, 2 * i) = q[i];
    strain_op(2, 2 * i + 1) = b[i];
  }
  strain_op /= two_a;

  Eigen::Matrix3d elasticity;
  const double f = youngs / (1.0 - poisson * poisson);
  elasticity << f, f * poisson, 0.0,  //
      f * poisson, f, 0.0,            //
      0.0, 0.0, f * (1.0 - poisson) / 2.0;

  const double area = two_a / 2.0;
  Eigen::Matrix<double, 6, 6> k =
      area * strain_op.transpose() * elasticity * strain_op;

  if (flipped) {
    // undo the node reordering so rows/cols follow the caller's order
    Eigen::Matrix<double, 6, 6> p = Eigen::Matrix<double, 6, 6>::Zero();
    const int perm[3] = {0, 2, 1};
    for (int i = 0; i < 3; ++i) {
      p(2 * i, 2 * perm[i]) = 1.0;
      p(2 * i + 1, 2 * perm[i] + 1) = 1.0;
    }
    k = p.transpose() * k * p;
  }
  return k;
}

Eigen::Matrix<double, 10, 10> assemble(const FemModel& model) {
  Eigen::Matrix<double, 10, 10> k = Eigen::Matrix<double, 10, 10>::Zero();
  for (int e = 0; e < 4; ++e) {
    const auto& conn = model.elements[static_cast<std::size_t>(e)];
    std::array<std::array<double, 2>, 3> coords;
    for (int i = 0; i < 3; ++i) {
      coords[static_cast<std::size_t>(i)] =
          model.nodes[static_cast<std::size_t>(conn[static_cast<std::size_t>(i)])];
    }
    const auto ke = element_stiffness(coords, model.youngs[static_cast<std::size_t>(e)],
                                      model.poissons[static_cast<std::size_t>(e)]);
    int dofs[6];
    for (int i = 0; i < 3; ++i) {
      dofs[2 * i] = 2 * conn[static_cast<std::size_t>(i)];
      dofs[2 * i + 1] = 2 * conn[static_cast<std::size_t>(i)] + 1;
    }
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        k(dofs[a], dofs[b]) += ke(a, b);
      }
    }
  }
  return k;
}

DisplacementVector solve_displacements(const FemModel& model) {
  const auto k = assemble(model);

  std::array<bool, 10> fixed{};
  for (int d : model.fixed_dofs) fixed[static_cast<std::size_t>(d)] = true;
  std::vector<int> free_dofs;
  for (int d = 0; d < 10; ++d) {
    if (!fixed[static_cast<std::size_t>(d)]) free_dofs.push_back(d);
  }
  const int nf = static_cast<int>(free_dofs.size());

  Eigen::MatrixXd kff(nf, nf);
  Eigen::VectorXd force = Eigen::VectorXd::Zero(nf);
  for (int a = 0; a < nf; ++a) {
    for (int b = 0; b < nf; ++b) {
      kff(a, b) = k(free_dofs[static_cast<std::size_t>(a)],
                    free_dofs[static_cast<std::size_t>(b)]);
    }
    if (free_dofs[static_cast<std::size_t>(a)] == model.load_dof) {
      force(a) = model.load;
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(kff);
  const Eigen::VectorXd sol = lu.solve(force);
  const double residual = (kff * sol - force).norm();
  if (!sol.allFinite() || residual > 1e-6 * (1.0 + force.norm())) {
    throw std::runtime_error("solve_displacements: singular system");
  }

  DisplacementVector u{};
  for (int a = 0; a < nf; ++a) {
    u[static_cast<std::size_t>(free_dofs[static_cast<std::size_t>(a)])] =
        sol(a);
  }
  return u;
}

double displacement_misfit(const DisplacementVector& computed,
                           const DisplacementVector& measured) {
  double sum = 0.0;
  for (std::size_t d = 4; d < 10; ++d) {  // free dofs only
    const double diff = computed[d] - measured[d];
    sum += diff * diff;
  }
  return sum;
}

FemInverseResult fem_inverse(const DisplacementVector& measured,
                             const PaConfig& cfg, RandomSource& src) {
  for (std::size_t d = 0; d < 4; ++d) {
    if (measured[d] != 0.0) {
      throw std::invalid_argument(
          "fem_inverse: fixed dofs of the measurement must be zero");
    }
  }

  Problem p;
  p.name = "fem-inverse";
  p.dimension = 8;
  p.sense = Problem::Sense::minimize;
  std::vector<FieldSpec> layouts;
  for (int e = 0; e < 4; ++e) {
    p.bounds.push_back({kModulusLow, kModulusHigh});
    p.bounds.push_back({kPoissonLow, kPoissonHigh});
    layouts.push_back(FieldSpec::continuous_field(cfg.string_bits,
                                                  kModulusLow, kModulusHigh));
    layouts.push_back(FieldSpec::continuous_field(cfg.string_bits,
                                                  kPoissonLow, kPoissonHigh));
  }
  p.objective = [&measured](std::span<const double> x) {
    MaterialVector mat;
    std::copy(x.begin(), x.end(), mat.begin());
    try {
      return displacement_misfit(solve_displacements(beam_model(mat)),
                                 measured);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();  // worst fitness
    }
  };

  FemInverseResult result;
  result.trace = pa_optimize(p, layouts, cfg, src);
  std::copy(result.trace.best_values.begin(), result.trace.best_values.end(),
            result.estimate.begin());
  return result;
}

}  // namespace bioopt
