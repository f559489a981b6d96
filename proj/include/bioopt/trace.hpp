//! Run traces and their CSV form.
//!
//! Every engine produces a RunTrace: one record per completed generation
//! (record 0 is the initial evaluation) plus the final best solution.
//! Traces are written as CSV with leading `#` comment lines carrying the
//! tool version, the resolved configuration, and the seed, so a run can be
//! replayed exactly from its own output.

#ifndef BIOOPT_TRACE_HPP
#define BIOOPT_TRACE_HPP

#include <cstdint>
#include <filesystem>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "bioopt/encoding.hpp"

namespace bioopt {

struct RunTrace {
  struct Record {
    int generation = 0;
    double best_objective = 0.0;
    double mean_objective = 0.0;
    Chromosome best_bits;            // bit-coded engines
    std::vector<double> best_reals;  // real-coded engine
    // Photosynthetic engine extras; untouched by the GA engines.
    double light = std::numeric_limits<double>::quiet_NaN();
    double rate = std::numeric_limits<double>::quiet_NaN();
    int cycle = -1;  // 0 = benson-calvin, 1 = photorespiration
    // Optional auxiliary metric (e.g. diffusivity error in synthetic runs).
    double aux = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = false;  // all-zero fitness, selection fell back to uniform
  };

  std::vector<Record> records;

  Chromosome best_bits;
  std::vector<double> best_reals;
  std::vector<double> best_values;  // decoded parameter vector
  double best_objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> best_constraints;
  bool feasible = true;

  std::uint64_t evaluations = 0;
  int degenerate_generations = 0;
  int nonfinite_evaluations = 0;
};

struct TraceMeta {
  std::string config;        // resolved key=value pairs, single line
  std::uint64_t seed = 0;
  int real_genes = 0;        // >0: genome columns x0..x{n-1} instead of hex
  bool pa_columns = false;   // append L,r,cycle
  std::string aux_column;    // non-empty: append a named aux column
};

/// Shortest round-trip decimal rendering (locale independent).
std::string format_double(double v);

void write_trace_csv(std::ostream& out, const RunTrace& trace,
                     const TraceMeta& meta);

/// Whole-file atomic write: temp file in the target directory + rename.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string trace_csv_string(const RunTrace& trace, const TraceMeta& meta);

}  // namespace bioopt

#endif  // BIOOPT_TRACE_HPP
