// SPDX-License-Identifier: Apache-2.0
//
// Adaptive Gauss-Kronrod quadrature (7-15 pair) over finite intervals.
// Worst-interval-first bisection; all abscissae are interior, so integrable
// endpoint singularities are handled by refinement alone.
#pragma once

#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace sojourn::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

namespace detail {

// QUADPACK dqk15 nodes and weights on [-1,1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& error) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    result_kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) result_gauss += kWg[j / 2] * fsum;
  }
  value = result_kronrod * half;
  error = std::fabs((result_kronrod - result_gauss) * half);
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& other) const { return error < other.error; }
};

}  // namespace detail

template <class F>
Result integrate_result(const F& f, double a, double b, double abs_tol = 1e-12,
                        double rel_tol = 1e-10, int max_intervals = 4000) {
  Result res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::priority_queue<detail::Interval> queue;
  detail::Interval whole{a, b, 0.0, 0.0};
  detail::gk15(f, a, b, whole.value, whole.error);
  queue.push(whole);
  double total_value = whole.value;
  double total_error = whole.error;
  int n_intervals = 1;
  while (total_error > abs_tol && total_error > rel_tol * std::fabs(total_value) &&
         n_intervals < max_intervals) {
    detail::Interval worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.error == 0.0 || mid <= worst.a || mid >= worst.b) break;  // cannot refine further
    queue.pop();
    detail::Interval left{worst.a, mid, 0.0, 0.0};
    detail::Interval right{mid, worst.b, 0.0, 0.0};
    detail::gk15(f, left.a, left.b, left.value, left.error);
    detail::gk15(f, right.a, right.b, right.value, right.error);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++n_intervals;
  }
  res.value = total_value;
  res.error = total_error;
  res.intervals = n_intervals;
  res.converged = total_error <= abs_tol || total_error <= rel_tol * std::fabs(total_value);
  return res;
}

// Throwing wrapper; quadrature failures must surface, never be clamped.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                 double rel_tol = 1e-10, int max_intervals = 4000) {
  const Result r = integrate_result(f, a, b, abs_tol, rel_tol, max_intervals);
  if (!r.converged) {
    throw std::runtime_error("quadrature: failed to converge on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "], error estimate " + std::to_string(r.error));
  }
  return r.value;
}

}  // namespace sojourn::quadrature
