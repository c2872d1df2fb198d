// SPDX-License-Identifier: Apache-2.0
//
// Moments of the sojourn time via the set-partition convolution formula
//   E[A_t^m] = sum over partitions rho of {1..m} of
//              integral_0^t (conv over blocks B of f_{|B|})(s) ds,
//   f_b(u) = u^{b-1} p_u,
// persistence probabilities in complete-Bell form, and Monte Carlo
// estimators of both.
//
// The integrand depends on block sizes only, so the partition sum runs over
// integer partitions (size profiles) weighted by the number of set
// partitions sharing the profile: m! / (prod_j (j!)^{m_j} * m_j!). That cuts
// the 4140 set partitions at m = 8 down to 22 profiles.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sojourn/models.hpp"
#include "sojourn/parallel.hpp"
#include "sojourn/quadrature.hpp"
#include "sojourn/random.hpp"
#include "sojourn/specfun.hpp"

namespace sojourn::moments {

namespace detail {

inline double factorial(int n) {
  static const double table[] = {1.0,     1.0,      2.0,       6.0,        24.0,
                                 120.0,   720.0,    5040.0,    40320.0,    362880.0,
                                 3628800.0, 39916800.0, 479001600.0};
  if (n < 0 || n > 12) throw std::invalid_argument("factorial: out of table range");
  return table[n];
}

inline double binomial(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// All integer partitions of m, each sorted non-increasing.
inline std::vector<std::vector<int>> integer_partitions(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  recurse(recurse, m, m);
  return out;
}

// Number of set partitions of {1..m} with the given size profile.
inline double profile_multiplicity(const std::vector<int>& profile, int m) {
  double denom = 1.0;
  int run = 1;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    denom *= factorial(profile[i]);
    if (i + 1 < profile.size() && profile[i + 1] == profile[i]) {
      ++run;
    } else {
      denom *= factorial(run);
      run = 1;
    }
  }
  return factorial(m) / denom;
}

// Trapezoid-weighted discrete convolution on a shared uniform grid.
inline std::vector<double> convolve(const std::vector<double>& u, const std::vector<double>& v,
                                    double h) {
  const std::size_t n = u.size() - 1;
  std::vector<double> w(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    double acc = 0.5 * (u[0] * v[i] + u[i] * v[0]);
    for (std::size_t j = 1; j < i; ++j) acc += u[j] * v[i - j];
    w[i] = h * acc;
  }
  return w;
}

inline double trapezoid(const std::vector<double>& y, double h) {
  double acc = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) acc += y[i];
  return acc * h;
}

inline double moment_on_grid(const models::PositivityFunction& p, double t, int m,
                             std::size_t n) {
  const double h = t / static_cast<double>(n);
  // f_1 needs the right limit of p at 0+.
  std::vector<double> pvals(n + 1);
  pvals[0] = p(std::max(t * 1e-12, 1e-300));
  for (std::size_t i = 1; i <= n; ++i) pvals[i] = p(h * static_cast<double>(i));

  std::vector<std::vector<double>> f(m + 1);
  for (int b = 1; b <= m; ++b) {
    f[b].resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      const double x = h * static_cast<double>(i);
      f[b][i] = (b == 1 ? 1.0 : std::pow(x, b - 1)) * pvals[i];
    }
  }

  // Convolutions shared between profiles via their sorted prefixes.
  std::map<std::vector<int>, std::vector<double>> cache;
  double total = 0.0;
  for (const auto& profile : integer_partitions(m)) {
    std::vector<int> prefix;
    const std::vector<double>* conv = nullptr;
    for (int b : profile) {
      prefix.push_back(b);
      auto it = cache.find(prefix);
      if (it == cache.end()) {
        std::vector<double> next = conv == nullptr ? f[b] : convolve(*conv, f[b], h);
        it = cache.emplace(prefix, std::move(next)).first;
      }
      conv = &it->second;
    }
    total += profile_multiplicity(profile, m) * trapezoid(*conv, h);
  }
  return total;
}

}  // namespace detail

struct MomentEstimate {
  double value = 0.0;
  double error = 0.0;  // grid-doubling Richardson estimate
};

// E[A_t^m] by profile-weighted discrete convolution; the value is the
// Richardson extrapolation of the grid_n and 2*grid_n trapezoid results and
// the error is their disagreement.
inline MomentEstimate moment_partition_quadrature(const models::PositivityFunction& p, double t,
                                                  int m, std::size_t grid_n = 1024) {
  if (m < 1 || m > 8) throw std::invalid_argument("moment_partition_quadrature: m must be 1..8");
  if (grid_n < 512)
    throw std::invalid_argument("moment_partition_quadrature: grid_n must be >= 512");
  if (!(t > 0.0)) throw std::invalid_argument("moment_partition_quadrature: t must be > 0");
  const double coarse = detail::moment_on_grid(p, t, m, grid_n);
  const double fine = detail::moment_on_grid(p, t, m, 2 * grid_n);
  MomentEstimate est;
  est.error = std::fabs(fine - coarse);
  est.value = fine + (fine - coarse) / 3.0;  // trapezoid is O(h^2)
  if (est.error > 1e-2 * std::max(std::fabs(est.value), 1e-12)) {
    throw std::runtime_error("moment_partition_quadrature: grid refinement did not converge (m=" +
                             std::to_string(m) + ")");
  }
  return est;
}

// P(X_{T_j} > 0) for T_j ~ Gam(q, j): integral of the gamma density against
// p_t, computed as (1/Gamma(j)) integral u^{j-1} e^{-u} p(u/q) du.
inline double gamma_time_positivity(const models::PositivityFunction& p, double q, int j) {
  if (!(q > 0.0) || j < 1) throw std::invalid_argument("gamma_time_positivity: bad arguments");
  const double norm = std::exp(-specfun::log_gamma(static_cast<double>(j)));
  const double cut = 50.0 + 5.0 * j;
  return norm * quadrature::integrate(
                    [&](double u) {
                      return std::pow(u, j - 1) * std::exp(-u) * p(u / q);
                    },
                    0.0, cut, 1e-13, 1e-11);
}

// Persistence probability p_k(q) via the complete Bell recurrence
//   Y_{n+1} = sum_j C(n,j) w_{j+1} Y_{n-j},  w_j = (j-1)! P(X_{T_j} > 0),
// divided by k!.
inline double persistence_prob_bell(const models::PositivityFunction& p, double q, int k) {
  if (k < 1 || k > 12) throw std::invalid_argument("persistence_prob_bell: k must be 1..12");
  std::vector<double> w(k + 1, 0.0);
  for (int j = 1; j <= k; ++j) {
    w[j] = detail::factorial(j - 1) * gamma_time_positivity(p, q, j);
  }
  std::vector<double> y(k + 1, 0.0);
  y[0] = 1.0;
  for (int n = 0; n + 1 <= k; ++n) {
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += detail::binomial(n, j) * w[j + 1] * y[n - j];
    y[n + 1] = acc;
  }
  return y[k] / detail::factorial(k);
}

// Brute-force oracle: the same persistence probability summed over all set
// partitions of {1..k}, enumerated as restricted growth strings.
inline double persistence_prob_enumeration(const models::PositivityFunction& p, double q, int k) {
  if (k < 1 || k > 8) throw std::invalid_argument("persistence_prob_enumeration: k must be 1..8");
  std::vector<double> gamma_pos(k + 1, 0.0);
  for (int j = 1; j <= k; ++j) gamma_pos[j] = gamma_time_positivity(p, q, j);

  std::vector<int> assignment(k, 0);
  double sum = 0.0;
  auto recurse = [&](auto&& self, int pos, int n_blocks) -> void {
    if (pos == k) {
      std::vector<int> sizes(n_blocks, 0);
      for (int i = 0; i < k; ++i) ++sizes[assignment[i]];
      double prod = 1.0;
      for (int s : sizes) prod *= detail::factorial(s - 1) * gamma_pos[s];
      sum += prod;
      return;
    }
    for (int b = 0; b <= n_blocks; ++b) {
      assignment[pos] = b;
      self(self, pos + 1, b == n_blocks ? n_blocks + 1 : n_blocks);
    }
  };
  recurse(recurse, 0, 0);
  return sum / detail::factorial(k);
}

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

// Monte Carlo persistence probability: positivity of the process at the
// first k arrival epochs of an independent rate-q Poisson process.
inline McEstimate persistence_prob_mc(const models::ProcessModel& model, double q, int k,
                                      std::size_t n_trials, const StreamFamily& streams,
                                      unsigned threads = 0) {
  if (!model.has_increment_sampler())
    throw std::invalid_argument("persistence_prob_mc: model has no increment sampler");
  if (k < 1 || n_trials == 0) throw std::invalid_argument("persistence_prob_mc: bad sizes");
  std::vector<std::uint8_t> hit(n_trials, 0);
  parallel_for(n_trials, threads, [&](std::uint64_t i) {
    RandomStream rng = streams.at(i);
    double x = 0.0;
    bool all_positive = true;
    for (int j = 0; j < k && all_positive; ++j) {
      const double dt = rng.exponential(q);
      x += models::sample_increment(model, dt, rng);
      all_positive = x > 0.0;
    }
    hit[i] = all_positive ? 1 : 0;
  });
  std::size_t successes = 0;
  for (auto h : hit) successes += h;
  McEstimate est;
  est.estimate = static_cast<double>(successes) / static_cast<double>(n_trials);
  est.standard_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(n_trials));
  return est;
}

struct SamplingMcEstimate {
  double estimate = 0.0;        // frequency of "positive at all m sampled times"
  double standard_error = 0.0;
  double power_mean = 0.0;      // mean of (A_t/t)^m over the same paths
  double power_se = 0.0;
};

// Sampling identity E[(A_t/t)^m] = P(X positive at m iid Uniform(0,t) times),
// estimated per path by reading the sign at the nearest grid node. The
// (A/t)^m average over the same paths is returned alongside for the
// conditional-Bernoulli consistency check.
inline SamplingMcEstimate moment_sampling_mc(const models::ProcessModel& model, double t, int m,
                                             std::size_t n_paths, std::size_t n_steps,
                                             const StreamFamily& streams, unsigned threads = 0) {
  if (!model.has_path_sampler())
    throw std::invalid_argument("moment_sampling_mc: model has no path sampler");
  if (m < 1 || n_paths == 0 || n_steps < 64)
    throw std::invalid_argument("moment_sampling_mc: bad sizes");
  const double horizon = model.kind == models::Kind::BrownianBridge ? model.param : t;

  std::vector<std::uint8_t> hit(n_paths, 0);
  std::vector<double> powers(n_paths, 0.0);
  parallel_for(n_paths, threads, [&](std::uint64_t i) {
    RandomStream rng = streams.at(i);
    thread_local std::vector<double> values;
    if (model.kind == models::Kind::BrownianBridge) {
      values = std::move(models::sample_bridge_path(horizon, n_steps, rng).values);
    } else {
      values.assign(n_steps + 1, 0.0);
      const double dt = horizon / static_cast<double>(n_steps);
      double x = 0.0;
      for (std::size_t s = 1; s <= n_steps; ++s) {
        x += models::sample_increment(model, dt, rng);
        values[s] = x;
      }
    }
    std::size_t positive = 0;
    for (std::size_t s = 1; s <= n_steps; ++s) {
      if (values[s] > 0.0) ++positive;
    }
    const double fraction = static_cast<double>(positive) / static_cast<double>(n_steps);
    powers[i] = std::pow(fraction, m);
    bool all_positive = true;
    for (int j = 0; j < m; ++j) {
      const double u = rng.uniform() * horizon;
      const auto node = static_cast<std::size_t>(
          std::llround(u / horizon * static_cast<double>(n_steps)));
      if (!(values[std::min(node, n_steps)] > 0.0)) all_positive = false;
    }
    hit[i] = all_positive ? 1 : 0;
  });

  SamplingMcEstimate est;
  std::size_t successes = 0;
  for (auto h : hit) successes += h;
  est.estimate = static_cast<double>(successes) / static_cast<double>(n_paths);
  est.standard_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(n_paths));
  double mean = 0.0;
  for (double v : powers) mean += v;
  mean /= static_cast<double>(n_paths);
  double var = 0.0;
  for (double v : powers) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n_paths);
  est.power_mean = mean;
  est.power_se = std::sqrt(var / static_cast<double>(n_paths));
  return est;
}

}  // namespace sojourn::moments
