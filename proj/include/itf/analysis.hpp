#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "itf/errors.hpp"

// Numerics for the integral inequality that fixes the reshuffling slope c:
//
//   I(c, mu) = int_0^mu [1 - (1 - c mu - x)(1 - c x / (1 - x))] dx  <=  c mu
//
// holds on 0 <= mu <= 1/(1+c) exactly when 2 c^2 ln((1+c)/c) >= 1.

namespace itf::analysis {

template <typename Scalar>
struct IntegralParams {
  Scalar c;
  Scalar mu;
  long steps = 1'000'000;
};

template <typename Scalar>
void require_mu_in_domain(Scalar mu) {
  if (!(mu >= Scalar(0)) || !(mu < Scalar(1))) {
    throw InvalidArgument("upper limit mu must satisfy 0 <= mu < 1");
  }
}

template <typename Scalar>
Scalar integrand(Scalar c, Scalar mu, Scalar x) {
  return Scalar(1) - (Scalar(1) - c * mu - x) * (Scalar(1) - c * x / (Scalar(1) - x));
}

/// mu^2 (c^2 + 3c/2 + 1/2) + mu c^2 ln(1 - mu)
template <typename Scalar>
Scalar integral_closed_form(Scalar c, Scalar mu) {
  using std::log1p;
  require_mu_in_domain(mu);
  return mu * mu * (c * c + Scalar(1.5) * c + Scalar(0.5)) + mu * c * c * log1p(-mu);
}

/// Composite Simpson rule on [0, mu]; an odd step count is rounded up.
template <typename Scalar>
Scalar integral_numeric(Scalar c, Scalar mu, long steps) {
  require_mu_in_domain(mu);
  if (steps < 2) throw InvalidArgument("Simpson quadrature needs at least 2 steps");
  if (steps % 2 != 0) ++steps;
  if (mu == Scalar(0)) return Scalar(0);
  const Scalar h = mu / static_cast<Scalar>(steps);
  Scalar odd(0);
  Scalar even(0);
  for (long i = 1; i < steps; ++i) {
    const Scalar value = integrand(c, mu, h * static_cast<Scalar>(i));
    (i % 2 != 0 ? odd : even) += value;
  }
  const Scalar ends = integrand(c, mu, Scalar(0)) + integrand(c, mu, mu);
  return h / Scalar(3) * (ends + Scalar(4) * odd + Scalar(2) * even);
}

template <typename Scalar>
Scalar integral_numeric(const IntegralParams<Scalar>& p) {
  return integral_numeric(p.c, p.mu, p.steps);
}

template <typename Scalar>
Scalar c_condition_value(Scalar c) {
  using std::log;
  return Scalar(2) * c * c * log((Scalar(1) + c) / c);
}

/// 2 c^2 ln((1+c)/c) >= 1.
template <typename Scalar>
bool check_c_condition(Scalar c) {
  if (!(c > Scalar(0))) return false;
  return c_condition_value(c) >= Scalar(1);
}

/// Smallest c in (0.5, 1) with the condition, by bisection to the given
/// bracket width. Returns the upper end of the final bracket, which always
/// satisfies the condition.
template <typename Scalar>
Scalar min_feasible_c(Scalar tolerance) {
  if (!(tolerance > Scalar(0))) throw InvalidArgument("tolerance must be positive");
  Scalar lo(0.5);
  Scalar hi(1);
  while (hi - lo > tolerance) {
    const Scalar mid = (lo + hi) / Scalar(2);
    (check_c_condition(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// f(mu) = mu (c^2 + 3c/2 + 1/2) + c^2 ln(1 - mu) - c, i.e. I(c, mu)/mu - c.
template <typename Scalar>
Scalar f_value(Scalar c, Scalar mu) {
  using std::log1p;
  return mu * (c * c + Scalar(1.5) * c + Scalar(0.5)) + c * c * log1p(-mu) - c;
}

template <typename Scalar>
Scalar f_derivative(Scalar c, Scalar mu) {
  return c * c + Scalar(1.5) * c + Scalar(0.5) - c * c / (Scalar(1) - mu);
}

/// f is increasing below this point.
template <typename Scalar>
Scalar f_monotone_limit(Scalar c) {
  return Scalar(1) - c * c / (c * c + Scalar(1.5) * c + Scalar(0.5));
}

template <typename Scalar>
struct NonPositiveReport {
  Scalar c;
  Scalar mu_max;      // 1 / (1 + c)
  Scalar max_f;       // largest f over the grid
  Scalar argmax_mu;
  Scalar f_at_zero;
  Scalar monotone_limit;
  bool range_below_monotone_limit;  // mu_max < monotone_limit
  bool derivative_positive;         // f' > 0 at every grid point
  bool strictly_increasing;         // consecutive grid values increase
  long grid_points;
  bool nonpositive(Scalar tol) const { return max_f <= tol; }
};

/// Evaluates f on a uniform grid over [0, 1/(1+c)] (endpoint included).
/// Throws InvalidArgument unless check_c_condition(c).
template <typename Scalar>
NonPositiveReport<Scalar> verify_f_nonpositive(Scalar c, Scalar grid_step) {
  if (!check_c_condition(c)) {
    throw InvalidArgument("c does not satisfy 2c^2 ln((1+c)/c) >= 1");
  }
  if (!(grid_step > Scalar(0))) throw InvalidArgument("grid step must be positive");
  NonPositiveReport<Scalar> report{};
  report.c = c;
  report.mu_max = Scalar(1) / (Scalar(1) + c);
  report.f_at_zero = f_value(c, Scalar(0));
  report.monotone_limit = f_monotone_limit(c);
  report.range_below_monotone_limit = report.mu_max < report.monotone_limit;
  report.max_f = -std::numeric_limits<Scalar>::infinity();
  report.derivative_positive = true;
  report.strictly_increasing = true;

  const auto intervals = static_cast<long>(std::ceil(report.mu_max / grid_step));
  Scalar previous = -std::numeric_limits<Scalar>::infinity();
  for (long i = 0; i <= intervals; ++i) {
    const Scalar mu = i == intervals ? report.mu_max : grid_step * static_cast<Scalar>(i);
    const Scalar value = f_value(c, mu);
    if (value > report.max_f) {
      report.max_f = value;
      report.argmax_mu = mu;
    }
    if (!(f_derivative(c, mu) > Scalar(0))) report.derivative_positive = false;
    if (!(value > previous)) report.strictly_increasing = false;
    previous = value;
  }
  report.grid_points = intervals + 1;
  return report;
}

/// min over the grid of (c mu - I(c, mu)) / mu for 0 < mu <= (1-eps)/(1+c):
/// the empirical gap that the existential constant gamma must fit under.
template <typename Scalar>
Scalar integral_margin(Scalar c, Scalar epsilon, Scalar grid_step) {
  if (!(grid_step > Scalar(0))) throw InvalidArgument("grid step must be positive");
  const Scalar upper = (Scalar(1) - epsilon) / (Scalar(1) + c);
  Scalar margin = std::numeric_limits<Scalar>::infinity();
  const auto points = static_cast<long>(std::floor(upper / grid_step));
  for (long i = 1; i <= points; ++i) {
    const Scalar mu = grid_step * static_cast<Scalar>(i);
    margin = std::min(margin, (c * mu - integral_closed_form(c, mu)) / mu);
  }
  margin = std::min(margin, (c * upper - integral_closed_form(c, upper)) / upper);
  return margin;
}

}  // namespace itf::analysis
