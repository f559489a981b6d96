#include "bioopt/heat.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace bioopt {

double DiffusivityField::max_kappa() const {
  double m = 0.0;
  for (double k : kappa) m = std::max(m, k);
  return m;
}

void DiffusivityField::validate() const {
  if (n < 1 || kappa.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("diffusivity grid size mismatch");
  }
  for (double k : kappa) {
    if (!(k > 0.0)) {
      throw std::invalid_argument("diffusivity must be positive everywhere");
    }
  }
}

TemperatureField initial_field(int n) {
  TemperatureField f;
  f.n = n;
  f.time = 0.0;
  f.u.assign(static_cast<std::size_t>(n) * n, 1.0);
  return f;
}

double stability_limit(const DiffusivityField& kappa) {
  const double h = 1.0 / kappa.n;
  return h * h / (4.0 * kappa.max_kappa());
}

double pick_dt(int n, double kappa_max, double t1) {
  if (!(t1 > 0.0) || !(kappa_max > 0.0) || n < 1) {
    throw std::invalid_argument("pick_dt: invalid arguments");
  }
  const double h = 1.0 / n;
  const double target = 0.9 * h * h / (4.0 * kappa_max);
  const double steps = std::ceil(t1 / target);
  return t1 / steps;
}

TemperatureField step(const TemperatureField& u, const DiffusivityField& kappa,
                      double dt) {
  kappa.validate();
  const int n = u.n;
  if (kappa.n != n) throw std::invalid_argument("step: grid mismatch");
  const double limit = stability_limit(kappa);
  if (dt > limit * (1.0 + 1e-12)) {
    throw std::invalid_argument(fmt::format(
        "step: dt={} violates the stability bound; admissible dt <= {}", dt,
        limit));
  }

  const double h = 1.0 / n;
  const double scale = dt / (h * h);
  TemperatureField out;
  out.n = n;
  out.time = u.time + dt;
  out.u.assign(static_cast<std::size_t>(n) * n, 0.0);

  auto value = [&](int i, int j) {
    return (i < 0 || i >= n || j < 0 || j >= n) ? 0.0 : u.at(i, j);
  };
  auto face = [&](int i, int j, int i2, int j2) {
    const bool inside = i2 >= 0 && i2 < n && j2 >= 0 && j2 < n;
    return inside ? 0.5 * (kappa.at(i, j) + kappa.at(i2, j2))
                  : kappa.at(i, j);
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double c = u.at(i, j);
      const double flux =
          face(i, j, i + 1, j) * (value(i + 1, j) - c) +
          face(i, j, i - 1, j) * (value(i - 1, j) - c) +
          face(i, j, i, j + 1) * (value(i, j + 1) - c) +
          face(i, j, i, j - 1) * (value(i, j - 1) - c);
      out.at(i, j) = c + scale * flux;
    }
  }
  return out;
}

MeasurementSet simulate(const DiffusivityField& kappa,
                        const std::array<double, 3>& times, double dt) {
  if (!(times[0] > 0.0) || !(times[1] > times[0]) || !(times[2] > times[1])) {
    throw std::invalid_argument("simulate: times must be positive and increasing");
  }
  std::array<long, 3> step_counts;
  for (std::size_t k = 0; k < 3; ++k) {
    const double raw = times[k] / dt;
    const long rounded = std::lround(raw);
    if (rounded < 1 || std::abs(raw - rounded) > 1e-6 * raw) {
      throw std::invalid_argument(fmt::format(
          "simulate: time {} is not an integer multiple of dt={}", times[k],
          dt));
    }
    step_counts[k] = rounded;
  }

  MeasurementSet set;
  TemperatureField u = initial_field(kappa.n);
  long done = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    for (; done < step_counts[k]; ++done) u = step(u, kappa, dt);
    set.snapshots[k] = u;
    set.snapshots[k].time = times[k];
  }
  return set;
}

namespace {

double l1_ratio(const std::vector<double>& ref, const std::vector<double>& got,
                const char* what) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += std::abs(ref[i] - got[i]);
    den += std::abs(ref[i]);
  }
  if (den == 0.0) {
    throw std::invalid_argument(
        fmt::format("{}: reference is identically zero", what));
  }
  return kErrorScale * num / den;
}

}  // namespace

double error_u(const MeasurementSet& measured,
               const MeasurementSet& computed) {
  std::vector<double> ref;
  std::vector<double> got;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& m = measured.snapshots[k];
    const auto& c = computed.snapshots[k];
    if (m.n != c.n) throw std::invalid_argument("error_u: grid mismatch");
    ref.insert(ref.end(), m.u.begin(), m.u.end());
    got.insert(got.end(), c.u.begin(), c.u.end());
  }
  return l1_ratio(ref, got, "error_u");
}

double error_kappa(const DiffusivityField& known,
                   const DiffusivityField& predicted) {
  if (known.n != predicted.n) {
    throw std::invalid_argument("error_kappa: grid mismatch");
  }
  return l1_ratio(known.kappa, predicted.kappa, "error_kappa");
}

DiffusivityField two_bump_target(int n) {
  DiffusivityField f(n, 0.5);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = (i + 0.5) / n;
      const double y = (j + 0.5) / n;
      const double d1 = (x - 0.3) * (x - 0.3) + (y - 0.3) * (y - 0.3);
      const double d2 = (x - 0.7) * (x - 0.7) + (y - 0.7) * (y - 0.7);
      f.at(i, j) = 0.5 + 0.9 * std::exp(-d1 / 0.04) + 0.9 * std::exp(-d2 / 0.04);
    }
  }
  return f;
}

IvbvResult ivbv_inverse(const MeasurementSet& measured,
                        const IvbvOptions& options, const RealGaConfig& cfg,
                        RandomSource& src, const DiffusivityField* known) {
  const int n = measured.snapshots[0].n;
  if (n < 1) throw std::invalid_argument("ivbv_inverse: empty measurement");
  if (!(options.kappa_lo > 0.0) || !(options.kappa_hi > options.kappa_lo)) {
    throw std::invalid_argument("ivbv_inverse: need 0 < kappa_lo < kappa_hi");
  }
  const std::array<double, 3> times = {measured.snapshots[0].time,
                                       measured.snapshots[1].time,
                                       measured.snapshots[2].time};
  const double dt =
      options.dt > 0.0 ? options.dt : pick_dt(n, options.kappa_hi, times[0]);
  const double h = 1.0 / n;
  if (dt > h * h / (4.0 * options.kappa_hi) * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        fmt::format("ivbv_inverse: dt={} is unstable for kappa up to {}", dt,
                    options.kappa_hi));
  }

  Problem p;
  p.name = "ivbv";
  p.dimension = n * n;
  p.sense = Problem::Sense::minimize;
  p.bounds.assign(static_cast<std::size_t>(n) * n,
                  {options.kappa_lo, options.kappa_hi});
  p.objective = [&measured, &times, dt, n](std::span<const double> genes) {
    DiffusivityField candidate;
    candidate.n = n;
    candidate.kappa.assign(genes.begin(), genes.end());
    try {
      return error_u(measured, simulate(candidate, times, dt));
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  std::function<double(std::span<const double>)> aux;
  if (known != nullptr) {
    aux = [known, n](std::span<const double> genes) {
      DiffusivityField candidate;
      candidate.n = n;
      candidate.kappa.assign(genes.begin(), genes.end());
      return error_kappa(*known, candidate);
    };
  }

  IvbvResult result;
  result.trace = evolve_real(p, cfg, src, aux);
  result.estimate.n = n;
  result.estimate.kappa = result.trace.best_values;
  return result;
}

}  // namespace bioopt
