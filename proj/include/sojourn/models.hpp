// SPDX-License-Identifier: Apache-2.0
//
// Process models, their positivity functions p_t = P(X_t > 0) and exact
// increment/path samplers.
//
// Half-stable subordinator convention: S_t is the hitting-time construction
// S_t = inf{s : B_s = t/sqrt(2)}, whose marginal is S_t = t^2/(2 N^2) with N
// standard normal. With drift -mu (mu > 0) this gives
//   P(S_t - mu t > 0) = P(N^2 < t/(2 mu)) = erf(sqrt(t/(4 mu))),
// i.e. erf(sqrt(b t)) with b = 1/(4 mu), which is the form every closed-form
// transform below relies on.
//
// Symmetric stable increments use the Chambers-Mallows-Stuck construction
// with the scale convention pinned so that alpha = 2 yields a centered
// Gaussian of variance 2*dt (one-step standard variate has variance 2).
#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sojourn/random.hpp"
#include "sojourn/specfun.hpp"

namespace sojourn::models {

enum class Kind {
  ConstantPositivity,
  BrownianMotion,
  BrownianDrift,
  SymmetricStable,
  HalfStableSubordinatorDrift,
  BrownianBridge,
};

struct ProcessModel {
  Kind kind = Kind::BrownianMotion;
  double param = 0.0;  // c, mu, alpha or bridge horizon depending on kind

  static ProcessModel constant(double c) {
    if (!(c >= 0.0 && c <= 1.0))
      throw std::invalid_argument("ConstantPositivity: c must lie in [0,1]");
    return {Kind::ConstantPositivity, c};
  }
  static ProcessModel brownian() { return {Kind::BrownianMotion, 0.0}; }
  static ProcessModel brownian_drift(double mu) {
    if (mu == 0.0) throw std::invalid_argument("BrownianDrift: mu must be nonzero");
    return {Kind::BrownianDrift, mu};
  }
  static ProcessModel symmetric_stable(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0))
      throw std::invalid_argument("SymmetricStable: alpha must lie in (0,2]");
    return {Kind::SymmetricStable, alpha};
  }
  static ProcessModel half_stable_drift(double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("HalfStableSubordinatorDrift: mu must be > 0");
    return {Kind::HalfStableSubordinatorDrift, mu};
  }
  static ProcessModel brownian_bridge(double horizon) {
    if (!(horizon > 0.0)) throw std::invalid_argument("BrownianBridge: horizon must be > 0");
    return {Kind::BrownianBridge, horizon};
  }

  bool is_levy() const {
    return kind != Kind::BrownianBridge && kind != Kind::ConstantPositivity;
  }
  bool has_increment_sampler() const { return is_levy(); }
  bool has_path_sampler() const { return is_levy() || kind == Kind::BrownianBridge; }
  bool has_positivity() const { return kind != Kind::BrownianBridge; }
};

struct PositivityFunction {
  std::function<double(double)> eval;
  std::optional<double> constant;

  bool is_constant() const { return constant.has_value(); }
  double operator()(double t) const { return constant ? *constant : eval(t); }
};

inline double positivity(const ProcessModel& model, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("positivity: requires t > 0");
  switch (model.kind) {
    case Kind::ConstantPositivity:
      return model.param;
    case Kind::BrownianMotion:
    case Kind::SymmetricStable:
      return 0.5;
    case Kind::BrownianDrift:
      return specfun::normal_cdf(model.param * std::sqrt(t));
    case Kind::HalfStableSubordinatorDrift:
      return specfun::erf(std::sqrt(t / (4.0 * model.param)));
    case Kind::BrownianBridge:
      throw std::invalid_argument("positivity: bridge has no stationary-increment positivity");
  }
  throw std::logic_error("positivity: unreachable");
}

inline PositivityFunction positivity_function(const ProcessModel& model) {
  PositivityFunction p;
  switch (model.kind) {
    case Kind::ConstantPositivity:
      p.constant = model.param;
      break;
    case Kind::BrownianMotion:
    case Kind::SymmetricStable:
      p.constant = 0.5;
      break;
    default:
      p.eval = [model](double t) { return positivity(model, t); };
      break;
  }
  return p;
}

// Standard symmetric alpha-stable variate (Chambers-Mallows-Stuck). At
// alpha = 1 the general formula reduces exactly to tan(theta) because the
// final exponent vanishes.
inline double sample_symmetric_stable(double alpha, RandomStream& rng) {
  const double theta = specfun::kPi * (rng.uniform() - 0.5);
  const double w = rng.exponential(1.0);
  if (alpha == 1.0) return std::tan(theta);
  const double s = std::sin(alpha * theta) / std::pow(std::cos(theta), 1.0 / alpha);
  return s * std::pow(std::cos((1.0 - alpha) * theta) / w, (1.0 - alpha) / alpha);
}

// One exact draw of X_{t+dt} - X_t.
inline double sample_increment(const ProcessModel& model, double dt, RandomStream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("sample_increment: requires dt > 0");
  switch (model.kind) {
    case Kind::BrownianMotion:
      return std::sqrt(dt) * rng.normal();
    case Kind::BrownianDrift:
      return model.param * dt + std::sqrt(dt) * rng.normal();
    case Kind::SymmetricStable:
      return std::pow(dt, 1.0 / model.param) * sample_symmetric_stable(model.param, rng);
    case Kind::HalfStableSubordinatorDrift: {
      // S_dt = dt^2/(2 N^2) exactly; drift is -mu.
      const double n = rng.normal();
      return dt * dt / (2.0 * n * n) - model.param * dt;
    }
    case Kind::ConstantPositivity:
    case Kind::BrownianBridge:
      throw std::invalid_argument("sample_increment: model has no stationary increments");
  }
  throw std::logic_error("sample_increment: unreachable");
}

struct GridPath {
  double horizon = 0.0;
  std::vector<double> values;  // values[0] == 0, size n+1
};

// Brownian bridge on an equispaced grid: a single Brownian path pinned by
// subtracting (s/horizon) * B_horizon. Both endpoints are exactly zero.
inline GridPath sample_bridge_path(double horizon, std::size_t n, RandomStream& rng) {
  if (!(horizon > 0.0)) throw std::invalid_argument("sample_bridge_path: requires horizon > 0");
  if (n < 2) throw std::invalid_argument("sample_bridge_path: requires n >= 2");
  GridPath path;
  path.horizon = horizon;
  path.values.resize(n + 1);
  const double step = horizon / static_cast<double>(n);
  const double sqrt_step = std::sqrt(step);
  double b = 0.0;
  path.values[0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    b += sqrt_step * rng.normal();
    path.values[k] = b;
  }
  const double b_end = b;
  for (std::size_t k = 1; k < n; ++k) {
    path.values[k] -= (static_cast<double>(k) / static_cast<double>(n)) * b_end;
  }
  path.values[n] = 0.0;
  return path;
}

// CLI model spec strings: const:c, bm, bm-drift:mu, stable:alpha,
// half-stable:mu, bridge:T.
inline ProcessModel parse_model(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  double value = 0.0;
  bool has_value = false;
  if (colon != std::string_view::npos) {
    try {
      value = std::stod(std::string(spec.substr(colon + 1)));
      has_value = true;
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_model: bad numeric parameter in '" + std::string(spec) +
                                  "'");
    }
  }
  auto require_value = [&](const char* what) {
    if (!has_value)
      throw std::invalid_argument(std::string("parse_model: ") + what + " requires a parameter");
  };
  if (name == "const") {
    require_value("const");
    return ProcessModel::constant(value);
  }
  if (name == "bm") return ProcessModel::brownian();
  if (name == "bm-drift") {
    require_value("bm-drift");
    return ProcessModel::brownian_drift(value);
  }
  if (name == "stable") {
    require_value("stable");
    return ProcessModel::symmetric_stable(value);
  }
  if (name == "half-stable") {
    require_value("half-stable");
    return ProcessModel::half_stable_drift(value);
  }
  if (name == "bridge") {
    require_value("bridge");
    return ProcessModel::brownian_bridge(value);
  }
  throw std::invalid_argument("parse_model: unknown model '" + std::string(spec) + "'");
}

inline std::string to_string(const ProcessModel& model) {
  switch (model.kind) {
    case Kind::ConstantPositivity:
      return "const:" + std::to_string(model.param);
    case Kind::BrownianMotion:
      return "bm";
    case Kind::BrownianDrift:
      return "bm-drift:" + std::to_string(model.param);
    case Kind::SymmetricStable:
      return "stable:" + std::to_string(model.param);
    case Kind::HalfStableSubordinatorDrift:
      return "half-stable:" + std::to_string(model.param);
    case Kind::BrownianBridge:
      return "bridge:" + std::to_string(model.param);
  }
  return "?";
}

}  // namespace sojourn::models
