#include "bioopt/ga.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <stdexcept>

namespace bioopt {

namespace {

constexpr int kPenaltyDoublingPeriod = 50;

bool better(double a, double b, Problem::Sense sense) {
  return sense == Problem::Sense::minimize ? a < b : a > b;
}

double worst_value(Problem::Sense sense) {
  return sense == Problem::Sense::minimize
             ? std::numeric_limits<double>::infinity()
             : -std::numeric_limits<double>::infinity();
}

struct Evaluated {
  double objective = 0.0;                // raw objective, may be non-finite
  std::vector<double> constraint_values;  // g_i, feasible iff all <= 0
  bool finite = true;
  bool feasible = true;

  double penalized(double coefficient, Problem::Sense sense) const {
    if (!finite) return worst_value(sense);
    return penalized_objective(objective, constraint_values, coefficient,
                               sense);
  }
};

Evaluated evaluate_point(const Problem& problem, std::span<const double> x) {
  Evaluated ev;
  ev.objective = problem.objective(x);
  ev.finite = std::isfinite(ev.objective);
  ev.constraint_values = problem.constraint_values(x);
  for (double g : ev.constraint_values) {
    if (!std::isfinite(g)) ev.finite = false;
  }
  ev.feasible = ev.finite && is_feasible(ev.constraint_values);
  return ev;
}

// Shift rule for the automatic fitness constant: the generation maximum
// plus a spread-proportional margin so the worst member keeps a small
// positive share of the wheel.
double auto_shift(double gen_min, double gen_max) {
  const double spread = gen_max - gen_min;
  return gen_max + (spread > 0.0 ? 0.01 * spread : 1.0);
}

// Fitness values for one generation of penalized objectives. Minimization
// uses F = A - y; maximization uses the raw value, shifted up only if
// negative values are present. Non-finite members get zero fitness.
std::vector<double> shape_fitness(std::span<const double> penalized,
                                  std::span<const std::uint8_t> finite,
                                  Problem::Sense sense, double fixed_a) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < penalized.size(); ++i) {
    if (!finite[i]) continue;
    lo = std::min(lo, penalized[i]);
    hi = std::max(hi, penalized[i]);
  }
  std::vector<double> fit(penalized.size(), 0.0);
  if (!(lo <= hi)) return fit;  // no finite member at all
  if (sense == Problem::Sense::minimize) {
    const double a = std::isnan(fixed_a) ? auto_shift(lo, hi) : fixed_a;
    for (std::size_t i = 0; i < penalized.size(); ++i) {
      if (finite[i]) fit[i] = fitness_shift(penalized[i], a);
    }
  } else {
    const double lift = lo < 0.0 ? auto_shift(lo, hi) - hi - lo : 0.0;
    for (std::size_t i = 0; i < penalized.size(); ++i) {
      if (finite[i]) fit[i] = std::max(penalized[i] + lift, 0.0);
    }
  }
  return fit;
}

}  // namespace

void GaConfig::validate() const {
  if (population_size < 1) throw std::invalid_argument("population_size < 1");
  if (max_generations < 0) throw std::invalid_argument("max_generations < 0");
  if (crossover_prob < 0.0 || crossover_prob > 1.0) {
    throw std::invalid_argument("crossover_prob outside [0, 1]");
  }
  if (mutation_prob < 0.0 || mutation_prob > 1.0) {
    throw std::invalid_argument("mutation_prob outside [0, 1]");
  }
  if (inversion_prob < 0.0 || inversion_prob > 1.0) {
    throw std::invalid_argument("inversion_prob outside [0, 1]");
  }
  if (crossover_points < 1) throw std::invalid_argument("crossover_points < 1");
  if (elitism_count < 0 || elitism_count >= population_size) {
    throw std::invalid_argument("elitism_count must be in [0, population)");
  }
  if (penalty_coefficient < 0.0) {
    throw std::invalid_argument("penalty_coefficient < 0");
  }
}

void RealGaConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("population_size < 2");
  if (max_generations < 0) throw std::invalid_argument("max_generations < 0");
  if (!(blend_beta > 0.0) || blend_beta > 1.0) {
    throw std::invalid_argument("blend_beta outside (0, 1]");
  }
  if (!(mutation_sigma > 0.0)) {
    throw std::invalid_argument("mutation_sigma must be > 0");
  }
  if (mutation_prob < 0.0 || mutation_prob > 1.0) {
    throw std::invalid_argument("mutation_prob outside [0, 1]");
  }
  if (elitism_count < 0 || elitism_count >= population_size) {
    throw std::invalid_argument("elitism_count must be in [0, population)");
  }
}

double fitness_shift(double objective, double a) {
  return std::max(a - objective, 0.0);
}

std::vector<double> fitness_proportionate(std::span<const double> fitness) {
  if (fitness.empty()) {
    throw std::invalid_argument("fitness_proportionate: empty input");
  }
  double total = 0.0;
  for (double f : fitness) {
    if (f < 0.0 || !std::isfinite(f)) {
      throw std::invalid_argument(
          "fitness_proportionate: values must be finite and non-negative");
    }
    total += f;
  }
  std::vector<double> probs(fitness.size());
  if (total <= 0.0) {
    std::fill(probs.begin(), probs.end(), 1.0 / fitness.size());
  } else {
    for (std::size_t i = 0; i < fitness.size(); ++i) {
      probs[i] = fitness[i] / total;
    }
  }
  return probs;
}

std::size_t spin_wheel(std::span<const double> probabilities,
                       RandomSource& src) {
  const double u = src.next_unit();
  double cum = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cum += probabilities[i];
    if (u < cum) return i;
  }
  return probabilities.size() - 1;  // guard against rounding shortfall
}

const Chromosome& select_parent(const Population& pop, RandomSource& src) {
  if (pop.members.empty()) {
    throw std::invalid_argument("select_parent: empty population");
  }
  std::vector<double> fitness;
  fitness.reserve(pop.members.size());
  for (const auto& m : pop.members) fitness.push_back(m.fitness);
  const auto probs = fitness_proportionate(fitness);
  return pop.members[spin_wheel(probs, src)].genome;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1,
                                            const Chromosome& p2, int points,
                                            RandomSource& src) {
  const std::size_t n = p1.size();
  if (p2.size() != n) {
    throw std::invalid_argument("crossover: parent lengths differ");
  }
  if (points < 1) throw std::invalid_argument("crossover: points < 1");

  Chromosome c1 = p1;
  Chromosome c2 = p2;
  if (n < 2) return {c1, c2};  // no interior cut exists

  // Distinct cut positions among the n-1 interior boundaries.
  const int k = std::min<std::size_t>(static_cast<std::size_t>(points), n - 1);
  std::vector<std::size_t> cuts;
  cuts.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(cuts.size()) < k) {
    const std::size_t cut = 1 + src.next_index(n - 1);
    if (std::find(cuts.begin(), cuts.end(), cut) == cuts.end()) {
      cuts.push_back(cut);
    }
  }
  std::sort(cuts.begin(), cuts.end());

  bool swapping = false;
  std::size_t next_cut = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (next_cut < cuts.size() && cuts[next_cut] == i) {
      swapping = !swapping;
      ++next_cut;
    }
    if (swapping) std::swap(c1.bits[i], c2.bits[i]);
  }
  return {c1, c2};
}

Chromosome mutate(const Chromosome& c, double mutation_prob,
                  RandomSource& src) {
  Chromosome out = c;
  for (auto& b : out.bits) {
    if (src.next_unit() < mutation_prob) b ^= 1;
  }
  return out;
}

Chromosome complement_range(Chromosome c, std::size_t begin,
                            std::size_t end) {
  for (std::size_t i = begin; i < end && i < c.size(); ++i) c.bits[i] ^= 1;
  return c;
}

Chromosome invert_segment(const Chromosome& c, RandomSource& src) {
  const std::size_t n = c.size();
  std::size_t a = src.next_index(n + 1);
  std::size_t b = src.next_index(n + 1);
  if (a > b) std::swap(a, b);
  return complement_range(c, a, b);
}

double penalized_objective(double raw, std::span<const double> g,
                           double coefficient, Problem::Sense sense) {
  double penalty = 0.0;
  for (double gi : g) {
    const double v = std::max(0.0, gi);
    penalty += v * v;
  }
  penalty *= coefficient;
  return sense == Problem::Sense::minimize ? raw + penalty : raw - penalty;
}

namespace {

// Shared bookkeeping for both engines: per-member evaluations plus the
// best-feasible-ever incumbent that becomes the reported solution of a
// constrained run.
struct BestTracker {
  bool has_feasible = false;
  double objective = 0.0;
  std::vector<double> values;
  std::vector<double> constraint_values;

  void offer(const Problem& problem, std::span<const double> x,
             const Evaluated& ev) {
    if (!ev.feasible) return;
    if (!has_feasible || better(ev.objective, objective, problem.sense)) {
      has_feasible = true;
      objective = ev.objective;
      values.assign(x.begin(), x.end());
      constraint_values = ev.constraint_values;
    }
  }
};

}  // namespace

RunTrace evolve(const Problem& problem, const GenomeLayout& layout,
                const GaConfig& cfg, RandomSource& src,
                std::span<const Chromosome> initial) {
  cfg.validate();
  layout.validate();
  if (static_cast<int>(layout.fields.size()) != problem.dimension) {
    throw LayoutError(fmt::format(
        "layout has {} fields but problem dimension is {}",
        layout.fields.size(), problem.dimension));
  }
  const std::size_t genome_bits =
      static_cast<std::size_t>(layout.total_bits());

  RunTrace trace;
  double coefficient = cfg.penalty_coefficient;
  BestTracker best;

  struct Slot {
    Chromosome genome;
    std::vector<double> x;
    Evaluated ev;
  };
  std::vector<Slot> pop(static_cast<std::size_t>(cfg.population_size));

  auto evaluate_slot = [&](Slot& s) {
    s.x = decode(s.genome, layout);
    s.ev = evaluate_point(problem, s.x);
    ++trace.evaluations;
    if (!s.ev.finite) ++trace.nonfinite_evaluations;
    best.offer(problem, s.x, s.ev);
  };

  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (i < initial.size()) {
      if (initial[i].size() != genome_bits) {
        throw LayoutError("seeded chromosome length does not match layout");
      }
      pop[i].genome = initial[i];
    } else {
      pop[i].genome = random_chromosome(genome_bits, src);
    }
    evaluate_slot(pop[i]);
  }

  std::vector<double> penalized(pop.size());
  std::vector<std::uint8_t> finite(pop.size());
  auto refresh_penalized = [&]() {
    for (std::size_t i = 0; i < pop.size(); ++i) {
      penalized[i] = pop[i].ev.penalized(coefficient, problem.sense);
      finite[i] = pop[i].ev.finite;
    }
  };
  auto best_index = [&]() {
    std::size_t bi = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
      if (better(penalized[i], penalized[bi], problem.sense)) bi = i;
    }
    return bi;
  };

  auto record_generation = [&](int gen, bool degenerate) {
    const std::size_t bi = best_index();
    RunTrace::Record rec;
    rec.generation = gen;
    rec.best_objective = pop[bi].ev.objective;
    double sum = 0.0;
    int count = 0;
    for (const auto& s : pop) {
      if (s.ev.finite) {
        sum += s.ev.objective;
        ++count;
      }
    }
    rec.mean_objective = count > 0 ? sum / count : 0.0;
    rec.best_bits = pop[bi].genome;
    rec.degenerate = degenerate;
    if (degenerate) ++trace.degenerate_generations;
    trace.records.push_back(std::move(rec));
  };

  refresh_penalized();
  record_generation(0, false);

  for (int gen = 1; gen <= cfg.max_generations; ++gen) {
    if (cfg.max_evaluations != 0 && trace.evaluations >= cfg.max_evaluations) {
      break;
    }
    refresh_penalized();

    const auto fitness = shape_fitness(penalized, finite, problem.sense,
                                       cfg.fitness_shift_a);
    const bool degenerate =
        std::all_of(fitness.begin(), fitness.end(),
                    [](double f) { return f == 0.0; });
    const auto probs = fitness_proportionate(fitness);

    // Elites: best by current penalized objective, copied unchanged.
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return better(penalized[a], penalized[b], problem.sense);
                     });

    std::vector<Slot> next;
    next.reserve(pop.size());
    for (int e = 0; e < cfg.elitism_count; ++e) {
      next.push_back(pop[order[static_cast<std::size_t>(e)]]);  // cached eval
    }
    while (next.size() < pop.size()) {
      const Chromosome& pa = pop[spin_wheel(probs, src)].genome;
      const Chromosome& pb = pop[spin_wheel(probs, src)].genome;
      auto [c1, c2] = src.next_unit() < cfg.crossover_prob
                          ? crossover(pa, pb, cfg.crossover_points, src)
                          : std::pair<Chromosome, Chromosome>(pa, pb);
      for (Chromosome* child : {&c1, &c2}) {
        if (next.size() >= pop.size()) break;
        Chromosome g = mutate(*child, cfg.mutation_prob, src);
        if (src.next_unit() < cfg.inversion_prob) {
          g = invert_segment(g, src);
        }
        Slot s;
        s.genome = std::move(g);
        evaluate_slot(s);
        next.push_back(std::move(s));
      }
    }
    pop = std::move(next);
    refresh_penalized();
    record_generation(gen, degenerate);

    if (gen % kPenaltyDoublingPeriod == 0 && !problem.constraints.empty()) {
      if (!pop[best_index()].ev.feasible) coefficient *= 2.0;
    }
  }

  // Report the best feasible point ever seen; fall back to the final
  // generation's best when the run never reached feasibility.
  refresh_penalized();
  const std::size_t bi = best_index();
  if (best.has_feasible) {
    trace.best_objective = best.objective;
    trace.best_values = best.values;
    trace.best_constraints = best.constraint_values;
    trace.feasible = true;
    trace.best_bits = encode(best.values, layout);
  } else {
    trace.best_objective = pop[bi].ev.objective;
    trace.best_values = pop[bi].x;
    trace.best_constraints = pop[bi].ev.constraint_values;
    trace.feasible = false;
    trace.best_bits = pop[bi].genome;
  }
  return trace;
}

std::pair<std::vector<double>, std::vector<double>> blend_children(
    std::span<const double> a, std::span<const double> b, double w) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("blend_children: size mismatch");
  }
  std::vector<double> c1(a.size());
  std::vector<double> c2(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    c1[i] = w * a[i] + (1.0 - w) * b[i];
    c2[i] = w * b[i] + (1.0 - w) * a[i];
  }
  return {std::move(c1), std::move(c2)};
}

RunTrace evolve_real(
    const Problem& problem, const RealGaConfig& cfg, RandomSource& src,
    const std::function<double(std::span<const double>)>& aux) {
  cfg.validate();
  if (problem.bounds.size() != static_cast<std::size_t>(problem.dimension)) {
    throw std::invalid_argument("problem must supply per-gene bounds");
  }
  const int dim = problem.dimension;

  RunTrace trace;
  double coefficient = cfg.penalty_coefficient;
  BestTracker best;

  struct Slot {
    std::vector<double> x;
    Evaluated ev;
  };
  std::vector<Slot> pop(static_cast<std::size_t>(cfg.population_size));

  auto evaluate_slot = [&](Slot& s) {
    s.ev = evaluate_point(problem, s.x);
    ++trace.evaluations;
    if (!s.ev.finite) ++trace.nonfinite_evaluations;
    best.offer(problem, s.x, s.ev);
  };

  for (auto& s : pop) {
    s.x.resize(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
      const auto [lo, hi] = problem.bounds[static_cast<std::size_t>(d)];
      s.x[static_cast<std::size_t>(d)] = src.next_range(lo, hi);
    }
    evaluate_slot(s);
  }

  std::vector<double> penalized(pop.size());
  auto refresh_penalized = [&]() {
    for (std::size_t i = 0; i < pop.size(); ++i) {
      penalized[i] = pop[i].ev.penalized(coefficient, problem.sense);
    }
  };
  auto sort_best_first = [&]() {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return better(penalized[a], penalized[b],
                                     problem.sense);
                     });
    std::vector<Slot> sorted;
    sorted.reserve(pop.size());
    for (auto i : order) sorted.push_back(std::move(pop[i]));
    pop = std::move(sorted);
    refresh_penalized();
  };

  auto record_generation = [&](int gen) {
    RunTrace::Record rec;
    rec.generation = gen;
    rec.best_objective = pop.front().ev.objective;
    double sum = 0.0;
    int count = 0;
    for (const auto& s : pop) {
      if (s.ev.finite) {
        sum += s.ev.objective;
        ++count;
      }
    }
    rec.mean_objective = count > 0 ? sum / count : 0.0;
    rec.best_reals = pop.front().x;
    if (aux) rec.aux = aux(pop.front().x);
    trace.records.push_back(std::move(rec));
  };

  refresh_penalized();
  sort_best_first();
  record_generation(0);

  const std::size_t keep = std::max<std::size_t>(
      {pop.size() / 2, static_cast<std::size_t>(cfg.elitism_count),
       std::size_t{1}});

  for (int gen = 1; gen <= cfg.max_generations; ++gen) {
    if (cfg.max_evaluations != 0 && trace.evaluations >= cfg.max_evaluations) {
      break;
    }
    // Truncation selection: the best half survives unchanged; offspring of
    // the survivors refill the rest.
    std::vector<Slot> next(pop.begin(),
                           pop.begin() + static_cast<std::ptrdiff_t>(keep));
    while (next.size() < pop.size()) {
      if (cfg.max_evaluations != 0 &&
          trace.evaluations >= cfg.max_evaluations) {
        next.push_back(pop[next.size()]);  // budget exhausted: keep old member
        continue;
      }
      const auto& pa = pop[src.next_index(keep)].x;
      const auto& pb = pop[src.next_index(keep)].x;
      const double w = 1.0 - cfg.blend_beta * src.next_unit();
      auto [c1, c2] = blend_children(pa, pb, w);
      for (auto* child : {&c1, &c2}) {
        if (next.size() >= pop.size()) break;
        if (cfg.max_evaluations != 0 &&
            trace.evaluations >= cfg.max_evaluations) {
          break;
        }
        for (int d = 0; d < dim; ++d) {
          const auto [lo, hi] = problem.bounds[static_cast<std::size_t>(d)];
          double v = (*child)[static_cast<std::size_t>(d)];
          if (src.next_unit() < cfg.mutation_prob) {
            v += src.next_gaussian() * cfg.mutation_sigma * (hi - lo);
          }
          (*child)[static_cast<std::size_t>(d)] = std::clamp(v, lo, hi);
        }
        Slot s;
        s.x = std::move(*child);
        evaluate_slot(s);
        next.push_back(std::move(s));
      }
    }
    pop = std::move(next);
    refresh_penalized();
    sort_best_first();
    record_generation(gen);

    if (gen % kPenaltyDoublingPeriod == 0 && !problem.constraints.empty()) {
      if (!pop.front().ev.feasible) coefficient *= 2.0;
    }
  }

  if (best.has_feasible) {
    trace.best_objective = best.objective;
    trace.best_values = best.values;
    trace.best_constraints = best.constraint_values;
    trace.feasible = true;
  } else {
    trace.best_objective = pop.front().ev.objective;
    trace.best_values = pop.front().x;
    trace.best_constraints = pop.front().ev.constraint_values;
    trace.feasible = false;
  }
  trace.best_reals = trace.best_values;
  return trace;
}

}  // namespace bioopt
