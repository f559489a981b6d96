#include "bioopt/pa.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace bioopt {

namespace {

constexpr int kCarbonSchedule[] = {3, 5, 6, 7};

bool better(double a, double b, Problem::Sense sense) {
  return sense == Problem::Sense::minimize ? a < b : a > b;
}

}  // namespace

void PaConfig::validate() const {
  if (!(v_max > 0.0)) throw std::invalid_argument("v_max must be > 0");
  if (!(affinity > 0.0)) throw std::invalid_argument("affinity must be > 0");
  if (!(light_low > 0.0) || light_high < light_low) {
    throw std::invalid_argument("need 0 < light_low <= light_high");
  }
  if (string_bits < 1 || string_bits > 63) {
    throw std::invalid_argument("string_bits outside [1, 63]");
  }
  if (strings_per_parameter < 1) {
    throw std::invalid_argument("strings_per_parameter < 1");
  }
  if (max_iterations < 0) throw std::invalid_argument("max_iterations < 0");
  if (stall_window < 0) throw std::invalid_argument("stall_window < 0");
  if (photo_segment_max < 0 || photo_segment_max > string_bits) {
    throw std::invalid_argument("photo_segment_max outside [0, string_bits]");
  }
  if (flip_prob() < 0.0 || flip_prob() > 1.0) {
    throw std::invalid_argument("photo_flip_prob outside [0, 1]");
  }
}

double light_intensity(const PaConfig& cfg, RandomSource& src) {
  return src.next_range(cfg.light_low, cfg.light_high);
}

double fixation_rate(double light, const PaConfig& cfg) {
  if (!(light > 0.0)) {
    throw std::invalid_argument(
        fmt::format("fixation_rate: light must be > 0, got {}", light));
  }
  return cfg.v_max / (1.0 + cfg.affinity / light);
}

Cycle choose_cycle(double rate, const PaConfig& cfg, RandomSource& src) {
  return src.next_unit() < rate / cfg.v_max ? Cycle::benson_calvin
                                            : Cycle::photorespiration;
}

void benson_calvin_shuffle(std::span<Chromosome> strings, unsigned& phase,
                           RandomSource& src) {
  for (std::size_t p = 0; p + 1 < strings.size(); p += 2) {
    Chromosome& a = strings[p];
    Chromosome& b = strings[p + 1];
    if (a.size() != b.size()) {
      throw std::invalid_argument("benson_calvin_shuffle: width mismatch");
    }
    const std::size_t width = a.size();
    std::size_t seg = static_cast<std::size_t>(
        kCarbonSchedule[phase % std::size(kCarbonSchedule)]);
    ++phase;
    seg = std::min(seg, width);
    const std::size_t start = src.next_index(width - seg + 1);
    for (std::size_t i = start; i < start + seg; ++i) {
      std::swap(a.bits[i], b.bits[i]);
    }
  }
}

void photorespiration_shuffle(std::span<Chromosome> strings, int segment_max,
                              double flip_prob, RandomSource& src) {
  for (auto& s : strings) {
    const std::size_t width = s.size();
    if (segment_max > 0) {
      std::size_t seg =
          1 + src.next_index(static_cast<std::uint64_t>(segment_max));
      seg = std::min(seg, width);
      const std::size_t start = src.next_index(width - seg + 1);
      for (std::size_t i = start; i < start + seg; ++i) s.bits[i] ^= 1;
    }
    for (auto& bit : s.bits) {
      if (src.next_unit() < flip_prob) bit ^= 1;
    }
  }
}

RunTrace pa_optimize(const Problem& problem,
                     std::span<const FieldSpec> layouts, const PaConfig& cfg,
                     RandomSource& src) {
  cfg.validate();
  if (static_cast<int>(layouts.size()) != problem.dimension) {
    throw LayoutError("pa_optimize: one field per problem dimension required");
  }
  for (const auto& f : layouts) {
    if (f.kind != FieldKind::continuous || f.bit_width != cfg.string_bits) {
      throw LayoutError(fmt::format(
          "pa_optimize: fields must be continuous with width {}",
          cfg.string_bits));
    }
  }

  const std::size_t dim = layouts.size();
  const std::size_t spp = static_cast<std::size_t>(cfg.strings_per_parameter);
  const std::size_t width = static_cast<std::size_t>(cfg.string_bits);

  RunTrace trace;

  // working[p][j]: candidate set j's string for parameter p.
  std::vector<std::vector<Chromosome>> working(dim);
  for (auto& per_param : working) {
    per_param.reserve(spp);
    for (std::size_t j = 0; j < spp; ++j) {
      per_param.push_back(random_chromosome(width, src));
    }
  }

  std::vector<Chromosome> incumbent_strings(dim);
  std::vector<double> incumbent_values;
  double incumbent_objective = 0.0;
  bool have_incumbent = false;

  auto decode_candidate = [&](std::size_t j) {
    std::vector<double> x(dim);
    for (std::size_t p = 0; p < dim; ++p) {
      std::uint64_t level = 0;
      for (std::size_t k = 0; k < width; ++k) {
        level = (level << 1) | working[p][j].bits[k];
      }
      x[p] = layouts[p].decode_level(level);
    }
    return x;
  };

  int stall = 0;

  // Evaluates every candidate set, challenges the incumbent, and returns
  // (best objective this pass, mean over finite candidates).
  auto evaluate_pass = [&]() {
    double pass_best = std::numeric_limits<double>::quiet_NaN();
    double sum = 0.0;
    int finite_count = 0;
    bool improved = false;
    for (std::size_t j = 0; j < spp; ++j) {
      const auto x = decode_candidate(j);
      const double y = problem.objective(x);
      ++trace.evaluations;
      if (!std::isfinite(y)) {
        ++trace.nonfinite_evaluations;
        continue;  // candidate discarded
      }
      sum += y;
      ++finite_count;
      if (std::isnan(pass_best) || better(y, pass_best, problem.sense)) {
        pass_best = y;
      }
      if (!have_incumbent ||
          better(y, incumbent_objective, problem.sense)) {
        have_incumbent = true;
        improved = true;
        incumbent_objective = y;
        incumbent_values = x;
        for (std::size_t p = 0; p < dim; ++p) {
          incumbent_strings[p] = working[p][j];
        }
      }
    }
    stall = improved ? 0 : stall + 1;
    const double mean = finite_count > 0 ? sum / finite_count : 0.0;
    return std::pair<double, double>(pass_best, mean);
  };

  auto record_iteration = [&](int iter, double mean, double light,
                              double rate, int cycle) {
    RunTrace::Record rec;
    rec.generation = iter;
    rec.best_objective = incumbent_objective;
    rec.mean_objective = mean;
    Chromosome joined(dim * width);
    for (std::size_t p = 0; p < dim; ++p) {
      std::copy(incumbent_strings[p].bits.begin(),
                incumbent_strings[p].bits.end(),
                joined.bits.begin() + static_cast<std::ptrdiff_t>(p * width));
    }
    rec.best_bits = std::move(joined);
    rec.light = light;
    rec.rate = rate;
    rec.cycle = cycle;
    trace.records.push_back(std::move(rec));
  };

  {
    const auto [first_best, mean] = evaluate_pass();
    (void)first_best;
    if (!have_incumbent) {
      // Every initial candidate was non-finite; keep strings as incumbent
      // placeholders so the trace stays well formed.
      incumbent_objective = std::numeric_limits<double>::quiet_NaN();
      incumbent_values = decode_candidate(0);
      for (std::size_t p = 0; p < dim; ++p) {
        incumbent_strings[p] = working[p][0];
      }
    }
    record_iteration(0, mean, std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN(), -1);
  }

  unsigned phase = 0;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    if (cfg.stall_window > 0 && stall >= cfg.stall_window) break;

    const double light = light_intensity(cfg, src);
    const double rate = fixation_rate(light, cfg);
    const Cycle cycle = choose_cycle(rate, cfg, src);

    if (cycle == Cycle::benson_calvin && have_incumbent) {
      for (std::size_t p = 0; p < dim; ++p) {
        for (std::size_t j = 0; j < spp; ++j) {
          Chromosome pair[2] = {working[p][j], incumbent_strings[p]};
          benson_calvin_shuffle(pair, phase, src);
          working[p][j] = std::move(pair[0]);
        }
      }
    } else {
      for (std::size_t p = 0; p < dim; ++p) {
        photorespiration_shuffle(working[p], cfg.photo_segment_max,
                                 cfg.flip_prob(), src);
      }
    }

    const auto [pass_best, mean] = evaluate_pass();
    (void)pass_best;
    record_iteration(iter, mean, light, rate, static_cast<int>(cycle));
  }

  trace.best_objective = incumbent_objective;
  trace.best_values = incumbent_values;
  Chromosome joined(dim * width);
  for (std::size_t p = 0; p < dim; ++p) {
    std::copy(incumbent_strings[p].bits.begin(),
              incumbent_strings[p].bits.end(),
              joined.bits.begin() + static_cast<std::ptrdiff_t>(p * width));
  }
  trace.best_bits = std::move(joined);
  trace.best_constraints = problem.constraint_values(incumbent_values);
  trace.feasible = is_feasible(trace.best_constraints);
  return trace;
}

}  // namespace bioopt
