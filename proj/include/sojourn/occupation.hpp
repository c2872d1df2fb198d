// SPDX-License-Identifier: Apache-2.0
//
// Path-level Monte Carlo for the positive sojourn time
//   A_t = integral of 1{X_s > 0} over [0, t],
// discretized as the Riemann sum (horizon/n) * #{k in 1..n : X_{s_k} > 0}.
// Node 0 is excluded: X_0 = 0 is never counted as positive. Grid values are
// compared with strict inequality; for the continuous marginals used here a
// node value is almost surely nonzero, so ties need no rule.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sojourn/models.hpp"
#include "sojourn/parallel.hpp"
#include "sojourn/random.hpp"
#include "sojourn/stats.hpp"

namespace sojourn::occupation {

struct OccupationSample {
  double a = 0.0;
  double t = 0.0;
  bool zero_flag = false;  // all grid values <= 0
};

inline OccupationSample occupation_of_path(const models::GridPath& path) {
  if (path.values.size() < 2 || !(path.horizon > 0.0))
    throw std::invalid_argument("occupation_of_path: invalid grid path");
  const std::size_t n = path.values.size() - 1;
  std::size_t positive = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (path.values[k] > 0.0) ++positive;
  }
  OccupationSample s;
  s.t = path.horizon;
  // count/n * horizon keeps the all-positive atom exactly at horizon
  s.a = path.horizon * (static_cast<double>(positive) / static_cast<double>(n));
  s.zero_flag = positive == 0;
  return s;
}

namespace detail {

// Streaming version of the same Riemann sum for stationary-increment models;
// avoids materializing the path.
inline OccupationSample simulate_one_levy(const models::ProcessModel& model, double t,
                                          std::size_t n_steps, RandomStream& rng) {
  const double dt = t / static_cast<double>(n_steps);
  double x = 0.0;
  std::size_t positive = 0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    x += models::sample_increment(model, dt, rng);
    if (x > 0.0) ++positive;
  }
  OccupationSample s;
  s.t = t;
  s.a = t * (static_cast<double>(positive) / static_cast<double>(n_steps));
  s.zero_flag = positive == 0;
  return s;
}

inline OccupationSample simulate_one(const models::ProcessModel& model, double t,
                                     std::size_t n_steps, RandomStream& rng) {
  if (model.kind == models::Kind::BrownianBridge) {
    return occupation_of_path(models::sample_bridge_path(t, n_steps, rng));
  }
  return simulate_one_levy(model, t, n_steps, rng);
}

}  // namespace detail

struct OccupationEcdf {
  std::vector<double> samples;
  stats::EcdfTable ecdf;
  double atom_at_zero = 0.0;     // frequency of A == 0
  double atom_at_horizon = 0.0;  // frequency of A == t (fixed-horizon runs)
  double horizon = 0.0;
};

inline OccupationEcdf simulate_occupation(const models::ProcessModel& model, double t,
                                          std::size_t n_steps, std::size_t n_paths,
                                          const StreamFamily& streams, unsigned threads = 0) {
  if (model.kind == models::Kind::ConstantPositivity)
    throw std::invalid_argument("simulate_occupation: ConstantPositivity has no paths");
  if (!model.has_path_sampler())
    throw std::invalid_argument("simulate_occupation: model has no path sampler");
  if (n_steps < 64) throw std::invalid_argument("simulate_occupation: n_steps must be >= 64");
  if (!(t > 0.0)) throw std::invalid_argument("simulate_occupation: t must be > 0");
  if (n_paths == 0) throw std::invalid_argument("simulate_occupation: n_paths must be > 0");
  const double horizon = model.kind == models::Kind::BrownianBridge ? model.param : t;

  std::vector<double> samples(n_paths);
  std::vector<std::uint8_t> zero(n_paths, 0);
  parallel_for(n_paths, threads, [&](std::uint64_t i) {
    RandomStream rng = streams.at(i);
    const OccupationSample s = detail::simulate_one(model, horizon, n_steps, rng);
    samples[i] = s.a;
    zero[i] = s.zero_flag ? 1 : 0;
  });

  OccupationEcdf out;
  out.horizon = horizon;
  std::size_t zeros = 0, fulls = 0;
  for (std::size_t i = 0; i < n_paths; ++i) {
    if (zero[i]) ++zeros;
    if (samples[i] == horizon) ++fulls;
  }
  out.atom_at_zero = static_cast<double>(zeros) / static_cast<double>(n_paths);
  out.atom_at_horizon = static_cast<double>(fulls) / static_cast<double>(n_paths);
  out.samples = samples;
  out.ecdf = stats::EcdfTable(std::move(samples));
  return out;
}

struct ExpOccupation {
  std::vector<double> a_values;          // A at the exponential horizon
  std::vector<double> horizons;         // realized E values
  std::vector<double> ratios;           // A_E / E, kept for independence checks
  stats::EcdfTable a_ecdf;
  double atom_at_zero = 0.0;
};

// Occupation at an independent Exponential(q) horizon. The horizon is capped
// at 50/q: P(E > 50/q) < 2e-22, invisible at every tested tolerance.
inline ExpOccupation simulate_occupation_at_exp(const models::ProcessModel& model, double q,
                                                std::size_t steps_per_unit, std::size_t n_paths,
                                                const StreamFamily& streams,
                                                unsigned threads = 0) {
  if (model.kind == models::Kind::ConstantPositivity)
    throw std::invalid_argument("simulate_occupation_at_exp: ConstantPositivity has no paths");
  if (model.kind == models::Kind::BrownianBridge)
    throw std::invalid_argument("simulate_occupation_at_exp: bridge has a fixed horizon");
  if (!(q > 0.0)) throw std::invalid_argument("simulate_occupation_at_exp: q must be > 0");
  if (steps_per_unit == 0 || n_paths == 0)
    throw std::invalid_argument("simulate_occupation_at_exp: sizes must be positive");

  ExpOccupation out;
  out.a_values.resize(n_paths);
  out.horizons.resize(n_paths);
  out.ratios.resize(n_paths);
  std::vector<std::uint8_t> zero(n_paths, 0);
  parallel_for(n_paths, threads, [&](std::uint64_t i) {
    RandomStream rng = streams.at(i);
    double horizon = rng.exponential(q);
    if (horizon > 50.0 / q) horizon = 50.0 / q;
    const double want = horizon * static_cast<double>(steps_per_unit);
    const std::size_t steps = want < 64.0 ? 64 : static_cast<std::size_t>(std::ceil(want));
    const OccupationSample s = detail::simulate_one_levy(model, horizon, steps, rng);
    out.a_values[i] = s.a;
    out.horizons[i] = horizon;
    out.ratios[i] = s.a / horizon;
    zero[i] = s.zero_flag ? 1 : 0;
  });
  std::size_t zeros = 0;
  for (auto z : zero) zeros += z;
  out.atom_at_zero = static_cast<double>(zeros) / static_cast<double>(n_paths);
  out.a_ecdf = stats::EcdfTable(out.a_values);
  return out;
}

}  // namespace sojourn::occupation
