// SPDX-License-Identifier: Apache-2.0
//
// Poisson point process representation of the sojourn time at an independent
// exponential horizon: points with intensity e^{-qt} t^{-1} p_t on (eps, inf)
// sum to a draw of A at Exponential(q).
//
// Sampling goes through the dominating gamma-process intensity e^{-qt}/t
// (p_t <= 1 always): the point count is Poisson with mean E1(q*eps), point
// locations invert the dominating tail u -> E1(qt)/E1(q*eps) by monotone
// bisection, and each point is kept with probability p_t (thinning). One
// inversion routine therefore serves every model.
//
// Truncation below eps is uncompensated: the discarded mass has mean
// integral_0^eps e^{-qt} p_t dt <= eps, far below every statistical
// tolerance at the default eps = 1e-9/q.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sojourn/models.hpp"
#include "sojourn/quadrature.hpp"
#include "sojourn/random.hpp"
#include "sojourn/specfun.hpp"

namespace sojourn::poisson_rep {

inline double default_epsilon(double q) { return 1e-9 / q; }

struct IntensitySpec {
  double q = 1.0;
  models::PositivityFunction positivity;
  double epsilon = 1e-9;

  IntensitySpec(double q_, models::PositivityFunction p, double eps)
      : q(q_), positivity(std::move(p)), epsilon(eps) {
    if (!(q > 0.0)) throw std::invalid_argument("IntensitySpec: q must be > 0");
    if (!(epsilon > 0.0) || epsilon > 1e-6 / q)
      throw std::invalid_argument("IntensitySpec: epsilon must lie in (0, 1e-6/q]");
  }
};

struct PointProcessSample {
  std::vector<double> points;  // every point > epsilon
  double total = 0.0;
  double epsilon = 0.0;
  double truncation_bias_bound = 0.0;  // integral_0^eps e^{-qt} p_t dt
};

namespace detail {

// Solve E1(q t) = target for t, bracketing upward from lo by doubling and
// bisecting to relative width 1e-12. E1 is strictly decreasing, so the
// bracket is certain.
inline double invert_dominating_tail(double q, double lo, double target) {
  double hi = std::max(lo * 2.0, 1.0 / q);
  while (specfun::exp_integral_e1(q * hi) > target) hi *= 2.0;
  while (hi - lo > 1e-12 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    if (specfun::exp_integral_e1(q * mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

inline PointProcessSample sample_poisson_sum(const IntensitySpec& spec, RandomStream& rng) {
  const double tail_mass = specfun::exp_integral_e1(spec.q * spec.epsilon);
  const std::uint64_t k = rng.poisson(tail_mass);
  if (k >= 10000)
    throw std::runtime_error("sample_poisson_sum: implausible point count (check epsilon)");
  PointProcessSample out;
  out.epsilon = spec.epsilon;
  out.points.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    const double u = rng.uniform();
    const double t = detail::invert_dominating_tail(spec.q, spec.epsilon, u * tail_mass);
    const double keep = rng.uniform();
    if (keep < spec.positivity(t)) {
      out.points.push_back(t);
      out.total += t;
    }
  }
  out.truncation_bias_bound = quadrature::integrate(
      [&](double t) { return std::exp(-spec.q * t) * spec.positivity(t); }, 0.0, spec.epsilon,
      1e-18, 1e-8);
  return out;
}

// Mean and variance of the point sum: integral of p_t e^{-qt} and of
// p_t t e^{-qt} over (0, inf). The e^{-qt} factor makes the tail beyond
// 60/q smaller than 1e-24/q, so the finite cut is exact at double precision.
inline std::pair<double, double> expected_sum(const IntensitySpec& spec) {
  const double cut = 60.0 / spec.q;
  const double mean = quadrature::integrate(
      [&](double t) { return spec.positivity(t) * std::exp(-spec.q * t); }, 0.0, cut, 1e-14,
      1e-10);
  const double variance = quadrature::integrate(
      [&](double t) { return spec.positivity(t) * t * std::exp(-spec.q * t); }, 0.0, cut, 1e-14,
      1e-10);
  return {mean, variance};
}

// Colored construction for constant positivity: sample the dominating
// process (intensity e^{-qt}/t), color each point black with probability c,
// and return the black and white sums. Marginals are Gam(q, c) and
// Gam(q, 1-c), independent.
inline std::pair<double, double> sample_colored_gamma(double c, double q, RandomStream& rng,
                                                      double epsilon = 0.0) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::invalid_argument("sample_colored_gamma: c must lie in [0,1]");
  if (!(q > 0.0)) throw std::invalid_argument("sample_colored_gamma: q must be > 0");
  if (epsilon <= 0.0) epsilon = default_epsilon(q);
  const double tail_mass = specfun::exp_integral_e1(q * epsilon);
  const std::uint64_t k = rng.poisson(tail_mass);
  if (k >= 10000)
    throw std::runtime_error("sample_colored_gamma: implausible point count (check epsilon)");
  double black = 0.0, white = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) {
    const double u = rng.uniform();
    const double t = detail::invert_dominating_tail(q, epsilon, u * tail_mass);
    if (rng.uniform() < c) {
      black += t;
    } else {
      white += t;
    }
  }
  return {black, white};
}

// Points divided by their sum, sorted non-increasing.
inline std::vector<double> normalized_points(const PointProcessSample& sample) {
  if (sample.points.empty() || !(sample.total > 0.0))
    throw std::invalid_argument("normalized_points: empty sample");
  std::vector<double> out(sample.points);
  for (double& v : out) v /= sample.total;
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

}  // namespace sojourn::poisson_rep
