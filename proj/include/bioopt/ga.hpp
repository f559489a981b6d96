//! Genetic algorithm engines.
//!
//! Two variants share the same generational loop shape:
//!   - evolve():      binary chromosomes, roulette-wheel selection, k-point
//!                    crossover, per-bit mutation, segment inversion,
//!                    elitist generational replacement.
//!   - evolve_real(): real vectors, truncation selection (best half
//!                    survives), per-pair blend crossover, per-gene gaussian
//!                    mutation clamped to bounds.
//!
//! Constrained problems are handled by a static quadratic exterior penalty
//! whose coefficient doubles every 50 generations while the generation best
//! is still infeasible.

#ifndef BIOOPT_GA_HPP
#define BIOOPT_GA_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "bioopt/encoding.hpp"
#include "bioopt/problem.hpp"
#include "bioopt/random.hpp"
#include "bioopt/trace.hpp"

namespace bioopt {

struct GaConfig {
  int population_size = 100;
  int max_generations = 200;
  double crossover_prob = 0.9;   // p_c
  double mutation_prob = 0.01;   // p_m, per bit
  double inversion_prob = 0.05;  // per child
  int crossover_points = 1;
  int elitism_count = 2;
  // Fitness shift A for minimization. NaN selects the automatic rule:
  // A = (generation max) + margin, recomputed every generation.
  double fitness_shift_a = std::numeric_limits<double>::quiet_NaN();
  double penalty_coefficient = 1e3;
  std::uint64_t max_evaluations = 0;  // 0 = unlimited

  void validate() const;
};

struct RealGaConfig {
  int population_size = 60;
  int max_generations = 100000;  // usually bounded by max_evaluations
  double blend_beta = 1.0;       // blend weight drawn uniform on (1-beta, 1]
  double mutation_sigma = 0.03;  // gaussian step as fraction of gene range
  double mutation_prob = 0.10;   // per gene
  int elitism_count = 2;
  double penalty_coefficient = 1e3;
  std::uint64_t max_evaluations = 0;  // 0 = unlimited

  void validate() const;
};

struct Population {
  struct Member {
    Chromosome genome;
    double objective = 0.0;
    double fitness = 0.0;
  };
  std::vector<Member> members;
  int generation = 0;
};

/// F = A - y, clamped below at zero.
double fitness_shift(double objective, double a);

/// Selection probabilities proportional to fitness. All-zero (degenerate)
/// input falls back to uniform probabilities.
std::vector<double> fitness_proportionate(std::span<const double> fitness);

/// Roulette-wheel index draw under fitness-proportionate probabilities.
std::size_t spin_wheel(std::span<const double> probabilities,
                       RandomSource& src);

const Chromosome& select_parent(const Population& pop, RandomSource& src);

/// k-point crossover. Cut positions are distinct and drawn uniformly from
/// the len-1 interior boundaries; at every bit position the children hold
/// the parents' bits as a multiset.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1,
                                            const Chromosome& p2, int points,
                                            RandomSource& src);

/// Each bit flips independently with probability p_m.
Chromosome mutate(const Chromosome& c, double mutation_prob,
                  RandomSource& src);

/// Complement bits in [begin, end). Involution for fixed endpoints.
Chromosome complement_range(Chromosome c, std::size_t begin, std::size_t end);

/// Complement one contiguous segment with uniformly random endpoints
/// (possibly empty, possibly the whole string).
Chromosome invert_segment(const Chromosome& c, RandomSource& src);

/// Quadratic exterior penalty: raw +/- coefficient * sum(max(0, g_i)^2),
/// added for minimization, subtracted for maximization.
double penalized_objective(double raw, std::span<const double> g,
                           double coefficient,
                           Problem::Sense sense = Problem::Sense::minimize);

/// Binary-chromosome GA. `initial` seeds the first members of generation 0;
/// the rest are random. Genomes decode through `layout` into the problem's
/// parameter space.
RunTrace evolve(const Problem& problem, const GenomeLayout& layout,
                const GaConfig& cfg, RandomSource& src,
                std::span<const Chromosome> initial = {});

/// Deterministic kernel of the real-coded blend crossover:
/// child1 = w*a + (1-w)*b, child2 = w*b + (1-w)*a.
std::pair<std::vector<double>, std::vector<double>> blend_children(
    std::span<const double> a, std::span<const double> b, double w);

/// Real-coded GA over the problem's box. `aux` (optional) is evaluated on
/// each generation's best vector and stored in the trace records.
RunTrace evolve_real(
    const Problem& problem, const RealGaConfig& cfg, RandomSource& src,
    const std::function<double(std::span<const double>)>& aux = {});

}  // namespace bioopt

#endif  // BIOOPT_GA_HPP
