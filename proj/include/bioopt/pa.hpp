//! Photosynthesis-inspired stochastic search.
//!
//! Candidates are fixed-width bit strings (16 by default), one or more per
//! parameter. Each iteration draws a light intensity L, computes the CO2
//! fixation rate r = v_max / (1 + affinity / L), and picks one of two moves
//! with probability r / v_max:
//!   - benson-calvin: exploitation; working strings swap contiguous
//!     segments with the incumbent-best string for the same parameter.
//!     Segment lengths cycle through {3, 5, 6, 7}, the carbon counts of the
//!     sugar interconversions in the pathway the move is named after.
//!   - photorespiration: exploration; each working string has one short
//!     random segment complemented plus sparse independent bit flips.
//! The best candidate ever evaluated is retained as the incumbent, so the
//! best objective in the trace is monotone.

#ifndef BIOOPT_PA_HPP
#define BIOOPT_PA_HPP

#include <span>
#include <vector>

#include "bioopt/encoding.hpp"
#include "bioopt/problem.hpp"
#include "bioopt/random.hpp"
#include "bioopt/trace.hpp"

namespace bioopt {

enum class Cycle { benson_calvin = 0, photorespiration = 1 };

struct PaConfig {
  double v_max = 30.0;      // maximum CO2 fixation rate
  double affinity = 1e4;    // CO2 affinity constant
  double light_low = 1e4;   // lx
  double light_high = 5e4;  // lx
  int string_bits = 16;
  int strings_per_parameter = 1;
  int max_iterations = 500;
  int stall_window = 200;  // iterations without improvement; 0 disables
  // Photorespiration tuning: segment length is uniform in
  // [1, photo_segment_max] (0 disables the segment move); flip probability
  // < 0 selects the default 2 / string_bits.
  int photo_segment_max = 4;
  double photo_flip_prob = -1.0;

  double flip_prob() const {
    return photo_flip_prob >= 0.0 ? photo_flip_prob : 2.0 / string_bits;
  }
  void validate() const;
};

/// Uniform draw on [light_low, light_high].
double light_intensity(const PaConfig& cfg, RandomSource& src);

/// r = v_max / (1 + affinity / light). Strictly increasing in light,
/// bounded above by v_max.
double fixation_rate(double light, const PaConfig& cfg);

/// Benson-calvin with probability rate / v_max, photorespiration otherwise.
Cycle choose_cycle(double rate, const PaConfig& cfg, RandomSource& src);

/// Exploitation shuffle: consecutive pairs (0,1), (2,3), ... exchange one
/// contiguous segment. `phase` indexes the {3,5,6,7} length schedule and
/// advances once per pair.
void benson_calvin_shuffle(std::span<Chromosome> strings, unsigned& phase,
                           RandomSource& src);

/// Exploration shuffle: each string gets one random segment of length
/// 1..segment_max complemented, then independent bit flips with flip_prob.
void photorespiration_shuffle(std::span<Chromosome> strings, int segment_max,
                              double flip_prob, RandomSource& src);

/// Runs the optimization loop. `layouts` supplies one continuous field per
/// problem dimension; each field is coded with cfg.string_bits bits.
RunTrace pa_optimize(const Problem& problem,
                     std::span<const FieldSpec> layouts, const PaConfig& cfg,
                     RandomSource& src);

}  // namespace bioopt

#endif  // BIOOPT_PA_HPP
