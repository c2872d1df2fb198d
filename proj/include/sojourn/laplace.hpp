// SPDX-License-Identifier: Apache-2.0
//
// Double Laplace transform of the sojourn time,
//   G(q, lambda) = integral_0^inf e^{-qt} E[exp(-lambda A_t)] dt
//               = (1/q) exp(-integral_0^inf e^{-qt} t^{-1} p_t (1 - e^{-lambda t}) dt),
// closed forms for constant positivity and for the half-stable subordinator
// with drift, the half-stable occupation law itself (atom at zero plus a
// density), and real-axis Gaver-Stehfest inversion.
//
// Sign resolution for the half-stable factor g: the closed-form expression
//   g(u) = (2bu+1)(erf(sqrt(bu)) - 1) + 2 e^{-bu} sqrt(bu/pi)
// satisfies g(0+) = -1, so it cannot be the nonnegative factor of a density.
// Both candidate signs are implemented; an oracle Laplace-transforms each
// candidate numerically on a q-grid, keeps the one matching
// (sqrt(b) + sqrt(q+b))^{-2}, and the choice is cached after one resolution.
#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "sojourn/models.hpp"
#include "sojourn/quadrature.hpp"
#include "sojourn/specfun.hpp"

namespace sojourn::laplace {

struct LaplaceQuery {
  double q = 1.0;
  double lambda = 0.0;

  LaplaceQuery(double q_, double lambda_) : q(q_), lambda(lambda_) {
    if (!(q > 0.0)) throw std::invalid_argument("LaplaceQuery: q must be > 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("LaplaceQuery: lambda must be >= 0");
  }
};

// G(q, lambda) by quadrature of the exponent integral. The integrand has a
// removable singularity at t = 0 (limit lambda * p_{0+}); -expm1 keeps the
// (1 - e^{-lambda t})/t factor accurate near zero, and the tail beyond t = 1
// is mapped onto (0,1] by t -> 1/u.
inline double g_double_laplace_quadrature(const models::PositivityFunction& p,
                                          const LaplaceQuery& query) {
  if (query.lambda == 0.0) return 1.0 / query.q;
  const double q = query.q;
  const double lambda = query.lambda;
  auto integrand = [&](double t) {
    return std::exp(-q * t) * p(t) * (-std::expm1(-lambda * t)) / t;
  };
  const double head = quadrature::integrate(integrand, 0.0, 1.0, 1e-11, 1e-10);
  // t = 1/u maps the tail onto (0,1]: the Jacobian 1/u^2 and the 1/t in the
  // intensity combine to integrand(u) = e^{-q t} p_t (1 - e^{-lambda t}) * t.
  const double tail = quadrature::integrate(
      [&](double u) {
        const double t = 1.0 / u;
        const double damp = std::exp(-q * t);
        if (damp == 0.0) return 0.0;
        return damp * p(t) * (-std::expm1(-lambda * t)) * t;
      },
      0.0, 1.0, 1e-11, 1e-10);
  return std::exp(-(head + tail)) / q;
}

// Constant positivity closed form G = 1/(q (1 + lambda/q)^c).
inline double g_closed_constant(double c, const LaplaceQuery& query) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("g_closed_constant: c not in [0,1]");
  return 1.0 / (query.q * std::pow(1.0 + query.lambda / query.q, c));
}

// Half-stable subordinator with drift -mu closed form, b = 1/(4 mu).
inline double g_closed_halfstable(double mu, const LaplaceQuery& query) {
  if (!(mu > 0.0)) throw std::invalid_argument("g_closed_halfstable: mu must be > 0");
  const double b = 1.0 / (4.0 * mu);
  const double sb = std::sqrt(b);
  const double ratio = (sb + std::sqrt(query.q + query.lambda + b)) /
                       (sb + std::sqrt(query.q + b));
  return ratio * ratio / (query.q + query.lambda);
}

enum class GSign { Printed, Negated };

// The closed-form candidate exactly as printed.
inline double halfstable_g_printed(double mu, double u) {
  const double b = 1.0 / (4.0 * mu);
  const double bu = b * u;
  return (2.0 * bu + 1.0) * (specfun::erf(std::sqrt(bu)) - 1.0) +
         2.0 * std::exp(-bu) * std::sqrt(bu / specfun::kPi);
}

namespace detail {

inline double g_candidate(GSign sign, double mu, double u) {
  const double v = halfstable_g_printed(mu, u);
  return sign == GSign::Printed ? v : -v;
}

// Numeric Laplace transform of a candidate at q >= 0, via u = v^2 so the
// integrand is smooth and decays like exp(-(q+b) v^2).
inline double g_transform_numeric(GSign sign, double mu, double q) {
  const double b = 1.0 / (4.0 * mu);
  const double cut = std::sqrt(60.0 / (q + b));
  return quadrature::integrate(
      [&](double v) {
        const double u = v * v;
        return 2.0 * v * std::exp(-q * u) * g_candidate(sign, mu, u);
      },
      0.0, cut, 1e-13, 1e-10);
}

}  // namespace detail

struct SignOracleReport {
  GSign resolved = GSign::Negated;
  double max_rel_err_resolved = 0.0;
  double max_rel_err_printed = 0.0;
};

// Transforms both candidates over a log grid q in [0.1, 10] and picks the
// one matching ghat(q) = (sqrt(b)+sqrt(q+b))^{-2}.
inline SignOracleReport halfstable_sign_oracle(double mu) {
  const double b = 1.0 / (4.0 * mu);
  double err_printed = 0.0, err_negated = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double q = 0.1 * std::pow(100.0, i / 14.0);
    const double root = std::sqrt(b) + std::sqrt(q + b);
    const double target = 1.0 / (root * root);
    const double printed = detail::g_transform_numeric(GSign::Printed, mu, q);
    const double negated = detail::g_transform_numeric(GSign::Negated, mu, q);
    err_printed = std::max(err_printed, std::fabs(printed - target) / target);
    err_negated = std::max(err_negated, std::fabs(negated - target) / target);
  }
  SignOracleReport report;
  if (err_negated <= err_printed) {
    report.resolved = GSign::Negated;
    report.max_rel_err_resolved = err_negated;
    report.max_rel_err_printed = err_printed;
  } else {
    report.resolved = GSign::Printed;
    report.max_rel_err_resolved = err_printed;
    report.max_rel_err_printed = err_negated;
  }
  if (report.max_rel_err_resolved > 1e-6) {
    throw std::runtime_error("halfstable_sign_oracle: neither sign matches the target transform");
  }
  return report;
}

namespace detail {

inline GSign cached_g_sign() {
  static GSign sign = GSign::Negated;
  static std::once_flag flag;
  std::call_once(flag, [] {
    const SignOracleReport report = halfstable_sign_oracle(1.0);
    sign = report.resolved;
    std::fprintf(stderr,
                 "sojourn: half-stable g sign resolved to %s (rel err %.2e vs %.2e)\n",
                 report.resolved == GSign::Negated ? "negated" : "printed",
                 report.max_rel_err_resolved, report.max_rel_err_printed);
  });
  return sign;
}

}  // namespace detail

// Sign-resolved nonnegative factor with Laplace transform
// (sqrt(b)+sqrt(q+b))^{-2}; tends to 1 as u -> 0+ and integrates to mu.
inline double halfstable_g(double mu, double u) {
  if (!(mu > 0.0) || !(u > 0.0)) throw std::invalid_argument("halfstable_g: requires mu,u > 0");
  return detail::g_candidate(detail::cached_g_sign(), mu, u);
}

// h(u) = 2 (b (erf(sqrt(bu)) + 1) + sqrt(b/(pi u)) e^{-bu}); positive with an
// integrable u^{-1/2} singularity at zero and limit 4b at infinity.
inline double halfstable_h(double mu, double u) {
  if (!(mu > 0.0) || !(u > 0.0)) throw std::invalid_argument("halfstable_h: requires mu,u > 0");
  const double b = 1.0 / (4.0 * mu);
  const double bu = b * u;
  return 2.0 * (b * (specfun::erf(std::sqrt(bu)) + 1.0) +
                std::sqrt(b / (specfun::kPi * u)) * std::exp(-bu));
}

namespace detail {

// 2 v h(v^2): the x = v^2 substitution weight with the 1/sqrt(u) singularity
// cancelled analytically.
inline double h_weighted(double b, double v) {
  const double bv2 = b * v * v;
  return 4.0 * b * v * (specfun::erf(std::sqrt(b) * v) + 1.0) +
         4.0 * std::sqrt(b / specfun::kPi) * std::exp(-bv2);
}

}  // namespace detail

// Occupation law of the half-stable subordinator with drift -mu at horizon
// t: an atom of mass g(t) at zero plus the density h(x) g(t-x) on (0,t).
class HalfStableLaw {
 public:
  HalfStableLaw(double mu, double t) : mu_(mu), t_(t), b_(1.0 / (4.0 * mu)) {
    if (!(mu > 0.0) || !(t > 0.0))
      throw std::invalid_argument("HalfStableLaw: requires mu,t > 0");
    atom0_ = halfstable_g(mu_, t_);
    density_mass_ = integral_against(0.0, t_);
    if (std::fabs(atom0_ + density_mass_ - 1.0) > 1e-6) {
      throw std::runtime_error("HalfStableLaw: atom + density mass differs from 1 (sign error?)");
    }
  }

  double mu() const { return mu_; }
  double t() const { return t_; }
  double atom0() const { return atom0_; }
  double density_mass() const { return density_mass_; }

  double density(double x) const {
    if (!(x > 0.0 && x < t_)) return 0.0;
    return halfstable_h(mu_, x) * halfstable_g(mu_, t_ - x);
  }

  double cdf(double x) const {
    if (!(x >= 0.0 && x <= t_)) throw std::invalid_argument("HalfStableLaw::cdf: x not in [0,t]");
    if (x == 0.0) return atom0_;
    double value = atom0_ + integral_against(0.0, x);
    if (value > 1.0) value = 1.0;  // <= 1e-6 quadrature slack
    return value;
  }

  // E[e^{-lambda A_t}] = atom + integral of e^{-lambda x} against the density.
  double laplace(double lambda) const {
    if (!(lambda >= 0.0)) throw std::invalid_argument("HalfStableLaw::laplace: lambda < 0");
    if (lambda == 0.0) return 1.0;
    return atom0_ + integral_against(lambda, t_);
  }

 private:
  // integral_0^x e^{-lambda s} h(s) g(t-s) ds via s = v^2.
  double integral_against(double lambda, double x) const {
    return quadrature::integrate(
        [&](double v) {
          const double s = v * v;
          const double weight = detail::h_weighted(b_, v) * halfstable_g(mu_, t_ - s);
          return lambda == 0.0 ? weight : weight * std::exp(-lambda * s);
        },
        0.0, std::sqrt(x), 1e-11, 1e-9);
  }

  double mu_, t_, b_;
  double atom0_ = 0.0;
  double density_mass_ = 0.0;
};

inline HalfStableLaw halfstable_law(double mu, double t) { return HalfStableLaw(mu, t); }

inline double halfstable_cdf(double mu, double t, double x) {
  return HalfStableLaw(mu, t).cdf(x);
}

struct InversionResult {
  double value = 0.0;
  double stability = 0.0;  // |result(stages) - result(stages-2)|
  bool flagged_unstable = false;
};

namespace detail {

// Stehfest weights for an even stage count, assembled in long double.
inline std::vector<long double> stehfest_weights(int stages) {
  const int n = stages / 2;
  auto lfact = [](int k) {
    long double f = 1.0L;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  std::vector<long double> zeta(stages + 1, 0.0L);
  for (int k = 1; k <= stages; ++k) {
    long double sum = 0.0L;
    const int j_lo = (k + 1) / 2;
    const int j_hi = k < n ? k : n;
    for (int j = j_lo; j <= j_hi; ++j) {
      long double term = std::pow(static_cast<long double>(j), n + 1) / lfact(n);
      term *= lfact(n) / (lfact(j) * lfact(n - j));          // C(n,j)
      term *= lfact(2 * j) / (lfact(j) * lfact(j));          // C(2j,j)
      term *= lfact(j) / (lfact(k - j) * lfact(2 * j - k));  // C(j,k-j)
      sum += term;
    }
    zeta[k] = ((n + k) % 2 == 0 ? 1.0L : -1.0L) * sum;
  }
  return zeta;
}

template <class F>
long double stehfest_value(const F& transform, double t, int stages) {
  const std::vector<long double> zeta = stehfest_weights(stages);
  const long double ln2_over_t = 0.693147180559945309417232121458L / t;
  // Kahan summation: the weights alternate with magnitudes up to ~1e10.
  long double sum = 0.0L, carry = 0.0L;
  for (int k = 1; k <= stages; ++k) {
    const long double term =
        zeta[k] * static_cast<long double>(transform(static_cast<double>(ln2_over_t * k)));
    const long double y = term - carry;
    const long double s = sum + y;
    carry = (s - sum) - y;
    sum = s;
  }
  return sum * ln2_over_t;
}

}  // namespace detail

// Recovers f(t) from its Laplace transform sampled on the real axis. The
// transform must be evaluable up to stages*ln2/t.
template <class F>
InversionResult gaver_stehfest_invert(F&& transform, double t, int stages = 16) {
  if (!(t > 0.0)) throw std::invalid_argument("gaver_stehfest_invert: t must be > 0");
  if (stages % 2 != 0 || stages < 10 || stages > 18)
    throw std::invalid_argument("gaver_stehfest_invert: stages must be even in [10,18]");
  const long double full = detail::stehfest_value(transform, t, stages);
  const long double reduced = detail::stehfest_value(transform, t, stages - 2);
  InversionResult res;
  res.value = static_cast<double>(full);
  res.stability = static_cast<double>(std::fabs(full - reduced));
  res.flagged_unstable = res.stability > 1e-3 * std::max(std::fabs(res.value), 1e-12);
  return res;
}

// G(q, lambda) for a model, dispatching to the closed form when one exists.
inline double g_for_model(const models::ProcessModel& model, const LaplaceQuery& query,
                          bool prefer_closed = true) {
  if (prefer_closed) {
    if (model.kind == models::Kind::ConstantPositivity)
      return g_closed_constant(model.param, query);
    if (model.kind == models::Kind::BrownianMotion ||
        model.kind == models::Kind::SymmetricStable)
      return g_closed_constant(0.5, query);
    if (model.kind == models::Kind::HalfStableSubordinatorDrift)
      return g_closed_halfstable(model.param, query);
  }
  return g_double_laplace_quadrature(models::positivity_function(model), query);
}

}  // namespace sojourn::laplace
