// SPDX-License-Identifier: Apache-2.0
//
// Empirical CDFs, Kolmogorov-Smirnov statistics and moment summaries used
// by every verification path.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sojourn::stats {

class EcdfTable {
 public:
  EcdfTable() = default;
  explicit EcdfTable(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw std::invalid_argument("EcdfTable: empty sample set");
    std::sort(samples_.begin(), samples_.end());
  }

  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& sorted() const { return samples_; }

  // Right-continuous step function: fraction of samples <= x.
  double value(double x) const {
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
  }

  // Exact-tie frequency at v (atom mass of the empirical law).
  double atom_at(double v) const {
    const auto range = std::equal_range(samples_.begin(), samples_.end(), v);
    return static_cast<double>(range.second - range.first) /
           static_cast<double>(samples_.size());
  }

 private:
  std::vector<double> samples_;
};

// Reference CDF with an explicit left limit so that point masses in the
// reference law are compared correctly.
struct Cdf {
  std::function<double(double)> value;
  std::function<double(double)> left_value;

  explicit Cdf(std::function<double(double)> v) : value(std::move(v)) {
    left_value = value;  // continuous by default
  }
  Cdf(std::function<double(double)> v, std::function<double(double)> lv)
      : value(std::move(v)), left_value(std::move(lv)) {}
};

struct KsReport {
  double statistic = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;  // zero for one-sample
  double threshold_at_alpha = 0.0;
  bool pass = false;
};

// One-sample KS against a nondecreasing reference CDF. The sup distance of a
// step function against a monotone target is attained at sample points,
// approached from either side, so both one-sided gaps are checked at each
// distinct value.
inline KsReport ks_one_sample(const EcdfTable& ecdf, const Cdf& cdf, double tolerance = -1.0) {
  const auto& xs = ecdf.sorted();
  const std::size_t n = xs.size();
  double d = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && xs[j] == xs[i]) ++j;
    const double below = static_cast<double>(i) / n;
    const double incl = static_cast<double>(j) / n;
    d = std::max(d, std::fabs(below - cdf.left_value(xs[i])));
    d = std::max(d, std::fabs(incl - cdf.value(xs[i])));
    i = j;
  }
  KsReport report;
  report.statistic = d;
  report.n = n;
  report.threshold_at_alpha = 1.36 / std::sqrt(static_cast<double>(n));
  report.pass = d <= (tolerance >= 0.0 ? tolerance : report.threshold_at_alpha);
  return report;
}

inline KsReport ks_two_sample(const EcdfTable& a, const EcdfTable& b, double tolerance = -1.0) {
  const auto& xs = a.sorted();
  const auto& ys = b.sorted();
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    double v;
    if (i >= xs.size()) v = ys[j];
    else if (j >= ys.size()) v = xs[i];
    else v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::fabs(i / n - j / m));
  }
  KsReport report;
  report.statistic = d;
  report.n = xs.size();
  report.m = ys.size();
  report.threshold_at_alpha = 1.36 * std::sqrt((n + m) / (n * m));
  report.pass = d <= (tolerance >= 0.0 ? tolerance : report.threshold_at_alpha);
  return report;
}

// Mean and its standard error; the variance convention is the 1/n central
// moment throughout this library.
inline std::pair<double, double> mean_se(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("mean_se: need at least two samples");
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(n);
  double m2 = 0.0;
  for (double x : samples) m2 += (x - mean) * (x - mean);
  m2 /= static_cast<double>(n);
  return {mean, std::sqrt(m2 / static_cast<double>(n))};
}

// Central-moment summary with standard errors for both the mean and the
// (1/n) variance; se_variance uses sqrt((m4 - m2^2)/n).
struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
  std::size_t n = 0;
};

inline MomentSummary summarize(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("summarize: need at least two samples");
  MomentSummary s;
  s.n = n;
  for (double x : samples) s.mean += x;
  s.mean /= static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (double x : samples) {
    const double d = x - s.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  s.variance = m2;
  s.se_mean = std::sqrt(m2 / static_cast<double>(n));
  s.se_variance = std::sqrt(std::max(0.0, m4 - m2 * m2) / static_cast<double>(n));
  return s;
}

inline double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("correlation: mismatched or undersized samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace sojourn::stats
