#ifndef BIOOPT_PROBLEM_HPP
#define BIOOPT_PROBLEM_HPP

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bioopt {

/// Box-bounded objective with optional inequality constraints.
/// Constraints use the convention g(x) <= 0 means feasible.
struct Problem {
  enum class Sense { minimize, maximize };

  std::string name;
  int dimension = 0;
  Sense sense = Sense::minimize;
  std::function<double(std::span<const double>)> objective;
  std::vector<std::function<double(std::span<const double>)>> constraints;
  std::vector<std::pair<double, double>> bounds;  // per-dimension [lo, hi]

  bool maximizing() const { return sense == Sense::maximize; }

  std::vector<double> constraint_values(std::span<const double> x) const {
    std::vector<double> g;
    g.reserve(constraints.size());
    for (const auto& c : constraints) g.push_back(c(x));
    return g;
  }
};

/// Feasibility threshold used everywhere a solution is flagged feasible.
inline constexpr double kFeasibilityTol = 1e-9;

inline bool is_feasible(std::span<const double> g,
                        double tol = kFeasibilityTol) {
  for (double v : g) {
    if (!(v <= tol)) return false;
  }
  return true;
}

}  // namespace bioopt

#endif  // BIOOPT_PROBLEM_HPP
