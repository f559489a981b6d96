#include "bioopt/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <optional>
#include <sstream>

#include "bioopt/config_file.hpp"
#include "bioopt/fem.hpp"
#include "bioopt/ga.hpp"
#include "bioopt/heat.hpp"
#include "bioopt/pa.hpp"
#include "bioopt/problems.hpp"
#include "bioopt/trace.hpp"
#include "bioopt/version.hpp"

namespace bioopt {

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string config_path;
  int repeat = 1;
};

struct GaOpts {
  int pop = 100;
  int generations = 200;
  double pc = 0.9;
  double pm = 0.01;
  double inversion = 0.05;
  int points = 1;
  int elitism = 2;
  double penalty = 1e3;
  int bits = 16;  // per continuous variable

  GaConfig to_config() const {
    GaConfig cfg;
    cfg.population_size = pop;
    cfg.max_generations = generations;
    cfg.crossover_prob = pc;
    cfg.mutation_prob = pm;
    cfg.inversion_prob = inversion;
    cfg.crossover_points = points;
    cfg.elitism_count = elitism;
    cfg.penalty_coefficient = penalty;
    return cfg;
  }

  std::string describe() const {
    return fmt::format(
        "pop={} generations={} pc={} pm={} inversion={} points={} elitism={} "
        "penalty={} bits={}",
        pop, generations, format_double(pc), format_double(pm),
        format_double(inversion), points, elitism, format_double(penalty),
        bits);
  }
};

struct PaOpts {
  int iterations = 500;
  double vmax = 30.0;
  double affinity = 1e4;
  double light_low = 1e4;
  double light_high = 5e4;
  int stall = 200;
  int strings = 1;

  PaConfig to_config() const {
    PaConfig cfg;
    cfg.max_iterations = iterations;
    cfg.v_max = vmax;
    cfg.affinity = affinity;
    cfg.light_low = light_low;
    cfg.light_high = light_high;
    cfg.stall_window = stall;
    cfg.strings_per_parameter = strings;
    return cfg;
  }

  std::string describe() const {
    return fmt::format(
        "iterations={} vmax={} affinity={} light-low={} light-high={} "
        "stall={} strings={}",
        iterations, format_double(vmax), format_double(affinity),
        format_double(light_low), format_double(light_high), stall, strings);
  }
};

struct RealGaOpts {
  int pop = 24;
  double sigma = 0.04;
  double pm = 0.05;
  double beta = 1.0;
  int elitism = 2;

  RealGaConfig to_config() const {
    RealGaConfig cfg;
    cfg.population_size = pop;
    cfg.mutation_sigma = sigma;
    cfg.mutation_prob = pm;
    cfg.blend_beta = beta;
    cfg.elitism_count = elitism;
    return cfg;
  }

  std::string describe() const {
    return fmt::format("pop={} sigma={} pm={} beta={} elitism={}", pop,
                       format_double(sigma), format_double(pm),
                       format_double(beta), elitism);
  }
};

std::string join_doubles(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += format_double(values[i]);
  }
  return s;
}

std::vector<double> parse_doubles(const std::string& text, std::size_t count,
                                  const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("{}: '{}' is not a number", what, item));
    }
  }
  if (count != 0 && values.size() != count) {
    throw ConfigError(fmt::format("{}: expected {} comma-separated values",
                                  what, count));
  }
  return values;
}

std::string header_lines(std::uint64_t seed, const std::string& config) {
  return fmt::format("# bioopt {}\n# seed={}\n# config: {}\n", kVersion, seed,
                     config);
}

void write_summary(const fs::path& path, std::uint64_t seed,
                   const std::string& config, const std::string& subcommand,
                   const RunTrace& trace, double wall_seconds,
                   const std::vector<std::string>& extra = {}) {
  std::string s = header_lines(seed, config);
  s += fmt::format("subcommand={}\n", subcommand);
  s += fmt::format("best_objective={}\n", format_double(trace.best_objective));
  s += fmt::format("best_solution={}\n", join_doubles(trace.best_values));
  if (!trace.best_constraints.empty()) {
    s += fmt::format("constraints={}\n", join_doubles(trace.best_constraints));
    s += fmt::format("feasible={}\n", trace.feasible ? "true" : "false");
  }
  s += fmt::format("generations={}\n",
                   trace.records.empty() ? 0 : trace.records.back().generation);
  s += fmt::format("evaluations={}\n", trace.evaluations);
  s += fmt::format("degenerate_generations={}\n",
                   trace.degenerate_generations);
  s += fmt::format("nonfinite_evaluations={}\n", trace.nonfinite_evaluations);
  for (const auto& line : extra) s += line + "\n";
  s += fmt::format("wall_time_s={}\n", format_double(wall_seconds));
  write_file_atomic(path, s);
}

fs::path output_path(const CommonOpts& common, const std::string& stem,
                     std::uint64_t seed, const char* ext) {
  const std::string name =
      common.repeat > 1 ? fmt::format("{}_seed{}.{}", stem, seed, ext)
                        : fmt::format("{}.{}", stem, ext);
  return fs::path(common.out_dir) / name;
}

// Runs `body` once per repeat with consecutive seeds; times each run.
template <typename Body>
int run_repeats(const CommonOpts& common, Body&& body) {
  fs::create_directories(common.out_dir);
  for (int k = 0; k < common.repeat; ++k) {
    const std::uint64_t seed = common.seed + static_cast<std::uint64_t>(k);
    const auto start = std::chrono::steady_clock::now();
    body(seed, [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           start)
          .count();
    });
  }
  return 0;
}

struct LayoutOverride {
  std::optional<GenomeLayout> layout;

  GenomeLayout resolve(const Problem& problem, int bits_per_var) const {
    if (!layout.has_value()) {
      return layout_for_problem(problem, bits_per_var);
    }
    if (static_cast<int>(layout->fields.size()) != problem.dimension) {
      throw ConfigError(fmt::format(
          "config layout has {} fields but the problem needs {}",
          layout->fields.size(), problem.dimension));
    }
    return *layout;
  }
};

int run_bit_ga(const CommonOpts& common, const GaOpts& ga,
               const LayoutOverride& layout_override, const Problem& problem,
               const GenomeLayout& default_layout, const std::string& config,
               const std::string& subcommand,
               std::span<const Chromosome> seeds_members, std::ostream& out) {
  return run_repeats(common, [&](std::uint64_t seed, auto elapsed) {
    GenomeLayout layout = default_layout;
    if (layout_override.layout.has_value()) {
      layout = layout_override.resolve(problem, ga.bits);
    }
    RandomSource src(seed);
    const RunTrace trace =
        evolve(problem, layout, ga.to_config(), src, seeds_members);

    TraceMeta meta;
    meta.seed = seed;
    meta.config = config;
    write_file_atomic(output_path(common, "trace", seed, "csv"),
                      trace_csv_string(trace, meta));
    write_summary(output_path(common, "summary", seed, "txt"), seed, config,
                  subcommand, trace, elapsed());
    if (problem.constraints.empty()) {
      out << fmt::format("{}: seed={} best={}\n", subcommand, seed,
                         format_double(trace.best_objective));
    } else {
      out << fmt::format("{}: seed={} best={} ({})\n", subcommand, seed,
                         format_double(trace.best_objective),
                         trace.feasible ? "feasible" : "infeasible");
    }
  });
}

int run_pa_engine(const CommonOpts& common, const PaOpts& pa,
                  const Problem& problem, const std::string& config,
                  const std::string& subcommand, std::ostream& out) {
  return run_repeats(common, [&](std::uint64_t seed, auto elapsed) {
    std::vector<FieldSpec> fields;
    for (const auto& [lo, hi] : problem.bounds) {
      fields.push_back(FieldSpec::continuous_field(16, lo, hi));
    }
    RandomSource src(seed);
    const RunTrace trace = pa_optimize(problem, fields, pa.to_config(), src);

    TraceMeta meta;
    meta.seed = seed;
    meta.config = config;
    meta.pa_columns = true;
    write_file_atomic(output_path(common, "trace", seed, "csv"),
                      trace_csv_string(trace, meta));
    write_summary(output_path(common, "summary", seed, "txt"), seed, config,
                  subcommand, trace, elapsed());
    out << fmt::format("{}: seed={} best={}\n", subcommand, seed,
                       format_double(trace.best_objective));
  });
}

DiffusivityField read_kappa_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot open {}", path.string()));
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(parse_doubles(line, 0, path.string()));
  }
  if (rows.empty()) throw ConfigError(path.string() + ": empty matrix");
  DiffusivityField f;
  f.n = static_cast<int>(rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw ConfigError(path.string() + ": matrix must be square");
    }
    f.kappa.insert(f.kappa.end(), row.begin(), row.end());
  }
  f.validate();
  return f;
}

std::string kappa_csv_string(const DiffusivityField& f, std::uint64_t seed,
                             const std::string& config) {
  std::string s = header_lines(seed, config);
  for (int i = 0; i < f.n; ++i) {
    for (int j = 0; j < f.n; ++j) {
      if (j) s += ',';
      s += format_double(f.at(i, j));
    }
    s += '\n';
  }
  return s;
}

// ---- config file injection ------------------------------------------------

// The config file is applied by inserting its entries as --key=value tokens
// ahead of the command-line flags; options use take-last semantics, so
// explicit flags win. Unknown keys surface as CLI11 unknown-option errors.
std::vector<std::string> inject_config(const std::vector<std::string>& args,
                                       ConfigFile& file, bool& have_config) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].starts_with("--config=")) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) {
    have_config = false;
    return args;
  }
  have_config = true;
  file = load_config_file(config_path);

  std::vector<std::string> merged;
  merged.reserve(args.size() + file.entries.size());
  bool injected = false;
  for (const auto& arg : args) {
    merged.push_back(arg);
    if (!injected && !arg.starts_with("-")) {
      // right after the subcommand name
      for (const auto& [key, value] : file.entries) {
        merged.push_back(fmt::format("--{}={}", key, value));
      }
      injected = true;
    }
  }
  if (!injected) {
    throw ConfigError("--config requires a subcommand");
  }
  return merged;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"bioopt: seeded bio-inspired optimization toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CommonOpts common;
  GaOpts ga;
  PaOpts pa;
  RealGaOpts rga;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
    sub->add_option("--out", common.out_dir, "output directory")
        ->capture_default_str();
    sub->add_option("--config", common.config_path,
                    "key=value config file (flags override file entries)");
    sub->add_option("--repeat", common.repeat,
                    "run this many consecutive seeds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_ga = [&](CLI::App* sub) {
    sub->add_option("--pop", ga.pop, "population size")->capture_default_str();
    sub->add_option("--generations", ga.generations, "generation count")
        ->capture_default_str();
    sub->add_option("--pc", ga.pc, "crossover probability")
        ->capture_default_str();
    sub->add_option("--pm", ga.pm, "per-bit mutation probability")
        ->capture_default_str();
    sub->add_option("--inversion", ga.inversion,
                    "per-child segment inversion probability")
        ->capture_default_str();
    sub->add_option("--points", ga.points, "crossover points")
        ->capture_default_str();
    sub->add_option("--elitism", ga.elitism, "elite copies per generation")
        ->capture_default_str();
    sub->add_option("--penalty", ga.penalty, "constraint penalty coefficient")
        ->capture_default_str();
    sub->add_option("--bits", ga.bits, "bits per continuous variable")
        ->capture_default_str();
  };
  auto add_pa = [&](CLI::App* sub) {
    sub->add_option("--iterations", pa.iterations, "iteration count")
        ->capture_default_str();
    sub->add_option("--vmax", pa.vmax, "maximum fixation rate")
        ->capture_default_str();
    sub->add_option("--affinity", pa.affinity, "affinity constant")
        ->capture_default_str();
    sub->add_option("--light-low", pa.light_low, "light range low (lx)")
        ->capture_default_str();
    sub->add_option("--light-high", pa.light_high, "light range high (lx)")
        ->capture_default_str();
    sub->add_option("--stall", pa.stall,
                    "stop after this many iterations without improvement "
                    "(0 = never)")
        ->capture_default_str();
    sub->add_option("--strings", pa.strings, "strings per parameter")
        ->capture_default_str();
  };

  // dejong ------------------------------------------------------------------
  int dj_alpha = 3;
  int dj_dim = 40;
  double dj_half = 256.0;
  std::string dj_engine = "ga";
  auto* dejong_cmd =
      app.add_subcommand("dejong", "minimize the even power-sum bowl");
  add_common(dejong_cmd);
  add_ga(dejong_cmd);
  add_pa(dejong_cmd);
  dejong_cmd->add_option("--alpha", dj_alpha, "power exponent (x^(2*alpha))")
      ->capture_default_str();
  dejong_cmd->add_option("--dim", dj_dim, "dimension")->capture_default_str();
  dejong_cmd->add_option("--half-length", dj_half, "domain half-length r")
      ->capture_default_str();
  dejong_cmd->add_option("--engine", dj_engine, "ga or pa")
      ->check(CLI::IsMember({"ga", "pa"}))
      ->capture_default_str();

  // bump ----------------------------------------------------------------
  auto* bump_cmd = app.add_subcommand(
      "bump", "maximize the constrained bumpy test function");
  add_common(bump_cmd);
  add_ga(bump_cmd);

  // vessel --------------------------------------------------------------
  std::string vessel_variant = "ts-r-l";
  auto* vessel_cmd =
      app.add_subcommand("vessel", "minimize the pressure-vessel cost");
  add_common(vessel_cmd);
  add_ga(vessel_cmd);
  vessel_cmd
      ->add_option("--cost-variant", vessel_variant,
                   "objective first term: ts-r-l (default) or ts-th-r")
      ->check(CLI::IsMember({"ts-r-l", "ts-th-r"}))
      ->capture_default_str();

  // fem-inverse -----------------------------------------------------------
  std::string fem_target = "600,0.25,400,0.35,450,0.30,350,0.32";
  auto* fem_cmd = app.add_subcommand(
      "fem-inverse",
      "recover per-element (E, nu) from beam displacements");
  add_common(fem_cmd);
  add_pa(fem_cmd);
  fem_cmd
      ->add_option("--target", fem_target,
                   "true materials E1,nu1,...,E4,nu4 used to synthesize "
                   "the measured displacements")
      ->capture_default_str();

  // ivbv ------------------------------------------------------------------
  int ivbv_grid = 8;
  std::uint64_t ivbv_budget = 40000;
  std::string ivbv_times = "0.01,0.02,0.04";
  double kappa_lo = 0.1;
  double kappa_hi = 5.0;
  std::string target_kappa_path;
  auto* ivbv_cmd = app.add_subcommand(
      "ivbv", "recover the diffusivity grid from temperature snapshots");
  add_common(ivbv_cmd);
  ivbv_cmd->add_option("--grid", ivbv_grid, "grid size N (N x N unknowns)")
      ->capture_default_str();
  ivbv_cmd->add_option("--budget", ivbv_budget, "total objective evaluations")
      ->capture_default_str();
  ivbv_cmd->add_option("--times", ivbv_times, "snapshot times t1,t2,t3")
      ->capture_default_str();
  ivbv_cmd->add_option("--kappa-lo", kappa_lo, "gene lower bound")
      ->capture_default_str();
  ivbv_cmd->add_option("--kappa-hi", kappa_hi, "gene upper bound")
      ->capture_default_str();
  ivbv_cmd->add_option("--target-kappa", target_kappa_path,
                       "CSV matrix of the true diffusivity (default: "
                       "built-in two-bump field)");
  ivbv_cmd->add_option("--pop", rga.pop, "population size")
      ->capture_default_str();
  ivbv_cmd->add_option("--sigma", rga.sigma,
                       "gaussian mutation step (fraction of gene range)")
      ->capture_default_str();
  ivbv_cmd->add_option("--pm", rga.pm, "per-gene mutation probability")
      ->capture_default_str();
  ivbv_cmd->add_option("--beta", rga.beta, "blend crossover parameter")
      ->capture_default_str();
  ivbv_cmd->add_option("--elitism", rga.elitism, "guaranteed survivors")
      ->capture_default_str();

  // pa-demo -----------------------------------------------------------------
  int pd_alpha = 1;
  int pd_dim = 2;
  double pd_half = 256.0;
  auto* pademo_cmd = app.add_subcommand(
      "pa-demo", "photosynthetic search on the power-sum bowl");
  add_common(pademo_cmd);
  add_pa(pademo_cmd);
  pademo_cmd->add_option("--alpha", pd_alpha, "power exponent")
      ->capture_default_str();
  pademo_cmd->add_option("--dim", pd_dim, "dimension")->capture_default_str();
  pademo_cmd->add_option("--half-length", pd_half, "domain half-length r")
      ->capture_default_str();

  ConfigFile config_file;
  bool have_config = false;
  try {
    const auto merged = inject_config(args, config_file, have_config);
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);  // CLI11 consumes tokens back to front
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "bioopt: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {  // config-file and layout errors
    err << "bioopt: " << e.what() << "\n";
    return 1;
  }

  LayoutOverride layout_override;
  layout_override.layout = config_file.layout;

  // pa-demo runs long enough to show convergence out of the box
  if (pademo_cmd->parsed() && pademo_cmd->count("--iterations") == 0) {
    pa.iterations = 2000;
  }

  try {
    if (dejong_cmd->parsed()) {
      const Problem problem = make_dejong(dj_alpha, dj_half, dj_dim);
      if (dj_engine == "ga") {
        const std::string config = fmt::format(
            "subcommand=dejong engine=ga alpha={} dim={} half-length={} {}",
            dj_alpha, dj_dim, format_double(dj_half), ga.describe());
        return run_bit_ga(common, ga, layout_override, problem,
                          layout_for_problem(problem, ga.bits), config,
                          "dejong", {}, out);
      }
      const std::string config = fmt::format(
          "subcommand=dejong engine=pa alpha={} dim={} half-length={} {}",
          dj_alpha, dj_dim, format_double(dj_half), pa.describe());
      return run_pa_engine(common, pa, problem, config, "dejong", out);
    }

    if (bump_cmd->parsed()) {
      const Problem problem = make_keane_bump();
      const std::string config =
          fmt::format("subcommand=bump engine=ga {}", ga.describe());
      // one member starts at the problem's customary (5, 5) starting point
      const GenomeLayout layout = layout_override.layout.has_value()
                                      ? layout_override.resolve(problem, ga.bits)
                                      : layout_for_problem(problem, ga.bits);
      const std::vector<Chromosome> seeds = {
          encode(std::vector<double>{5.0, 5.0}, layout)};
      return run_bit_ga(common, ga, layout_override, problem, layout, config,
                        "bump", seeds, out);
    }

    if (vessel_cmd->parsed()) {
      const auto variant = vessel_variant == "ts-r-l"
                               ? VesselObjective::ts_r_l
                               : VesselObjective::ts_th_r;
      const Problem problem = make_vessel(variant);
      const std::string config =
          fmt::format("subcommand=vessel engine=ga cost-variant={} {}",
                      vessel_variant, ga.describe());
      return run_bit_ga(common, ga, layout_override, problem, vessel_layout(),
                        config, "vessel", {}, out);
    }

    if (fem_cmd->parsed()) {
      const auto target_values = parse_doubles(fem_target, 8, "--target");
      MaterialVector target;
      std::copy(target_values.begin(), target_values.end(), target.begin());
      const DisplacementVector measured =
          solve_displacements(beam_model(target));
      const std::string config =
          fmt::format("subcommand=fem-inverse engine=pa target={} {}",
                      fem_target, pa.describe());
      return run_repeats(common, [&](std::uint64_t seed, auto elapsed) {
        RandomSource src(seed);
        const auto result = fem_inverse(measured, pa.to_config(), src);

        TraceMeta meta;
        meta.seed = seed;
        meta.config = config;
        meta.pa_columns = true;
        write_file_atomic(output_path(common, "trace", seed, "csv"),
                          trace_csv_string(result.trace, meta));

        std::string est = header_lines(seed, config);
        est += "parameter,value\n";
        static constexpr const char* kNames[] = {"E1", "nu1", "E2", "nu2",
                                                 "E3", "nu3", "E4", "nu4"};
        for (std::size_t i = 0; i < 8; ++i) {
          est += fmt::format("{},{}\n", kNames[i],
                             format_double(result.estimate[i]));
        }
        write_file_atomic(output_path(common, "estimate", seed, "csv"), est);

        std::vector<std::string> extra;
        extra.push_back(fmt::format(
            "measured_displacements={}",
            join_doubles(std::vector<double>(measured.begin(),
                                             measured.end()))));
        write_summary(output_path(common, "summary", seed, "txt"), seed,
                      config, "fem-inverse", result.trace, elapsed(), extra);
        out << fmt::format("fem-inverse: seed={} misfit={}\n", seed,
                           format_double(result.trace.best_objective));
      });
    }

    if (ivbv_cmd->parsed()) {
      const auto times_vec = parse_doubles(ivbv_times, 3, "--times");
      IvbvOptions options;
      options.times = {times_vec[0], times_vec[1], times_vec[2]};
      options.kappa_lo = kappa_lo;
      options.kappa_hi = kappa_hi;

      const DiffusivityField target =
          target_kappa_path.empty() ? two_bump_target(ivbv_grid)
                                    : read_kappa_csv(target_kappa_path);
      if (target.n != ivbv_grid) {
        throw ConfigError(fmt::format(
            "--target-kappa is {0}x{0} but --grid is {1}", target.n,
            ivbv_grid));
      }
      // one step for both the synthetic measurements and every candidate,
      // stable for the target field as well as the whole gene box
      options.dt = pick_dt(ivbv_grid, std::max(kappa_hi, target.max_kappa()),
                           options.times[0]);
      const MeasurementSet measured = simulate(target, options.times, options.dt);

      RealGaConfig cfg = rga.to_config();
      cfg.max_evaluations = ivbv_budget;
      const std::string config = fmt::format(
          "subcommand=ivbv engine=ga-real grid={} budget={} times={} "
          "kappa-lo={} kappa-hi={} {}",
          ivbv_grid, ivbv_budget, ivbv_times, format_double(kappa_lo),
          format_double(kappa_hi), rga.describe());

      return run_repeats(common, [&](std::uint64_t seed, auto elapsed) {
        RandomSource src(seed);
        const auto result =
            ivbv_inverse(measured, options, cfg, src, &target);

        TraceMeta meta;
        meta.seed = seed;
        meta.config = config;
        meta.real_genes = ivbv_grid * ivbv_grid;
        meta.aux_column = "E_kappa";
        write_file_atomic(output_path(common, "trace", seed, "csv"),
                          trace_csv_string(result.trace, meta));
        write_file_atomic(output_path(common, "kappa_estimate", seed, "csv"),
                          kappa_csv_string(result.estimate, seed, config));
        write_file_atomic(output_path(common, "kappa_target", seed, "csv"),
                          kappa_csv_string(target, seed, config));

        std::vector<std::string> extra;
        extra.push_back(fmt::format(
            "final_E_u={}", format_double(result.trace.best_objective)));
        extra.push_back(fmt::format(
            "final_E_kappa={}",
            format_double(error_kappa(target, result.estimate))));
        write_summary(output_path(common, "summary", seed, "txt"), seed,
                      config, "ivbv", result.trace, elapsed(), extra);
        out << fmt::format("ivbv: seed={} E_u={} E_kappa={}\n", seed,
                           format_double(result.trace.best_objective),
                           format_double(error_kappa(target, result.estimate)));
      });
    }

    if (pademo_cmd->parsed()) {
      const Problem problem = make_dejong(pd_alpha, pd_half, pd_dim);
      const std::string config = fmt::format(
          "subcommand=pa-demo engine=pa alpha={} dim={} half-length={} {}",
          pd_alpha, pd_dim, format_double(pd_half), pa.describe());
      return run_pa_engine(common, pa, problem, config, "pa-demo", out);
    }
  } catch (const ConfigError& e) {
    err << "bioopt: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "bioopt: " << e.what() << "\n";
    return 2;
  }

  err << "bioopt: no subcommand\n";
  return 1;
}

}  // namespace bioopt
