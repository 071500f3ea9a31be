#pragma once
// Full-information benchmark.
//
// The optimal long-run reward per unit time c* is the unique root of
//   Phi(c) = lambda * E[(r(X) - c X)_+] - c,
// and the stationary policy accepting exactly the tasks with r(x) >= c* x is
// within c*C of optimal. The reward-to-go v(t) of the optimal policy solves
// the backward equation
//   v'(t) = -lambda * E[(r(X) + v(t + X) - v(t))_+],   v = 0 on [T, inf),
// and is pinched between the affine bounds w(t) = c*(T - t) and w(t - C).

#include <vector>

#include "timealloc/env.hpp"

namespace timealloc {

struct OracleSolution {
  double c_star = 0;
  double horizon = 0;          // T
  double grid_step = 0;        // dt; values.size() == round(T/dt) + 1
  std::vector<double> values;  // values[i] = v(i * dt)

  double w(double t) const { return c_star * (horizon - t); }
  // Linear interpolation on the grid; 0 beyond the horizon.
  double value_at(double t) const;
};

// Exact sum for discrete duration laws; adaptive Gauss-Legendre quadrature
// (absolute tolerance 1e-10) over the analytic positivity region of
// r(x) - c x for continuous ones. Requires c >= 0.
double phi(const EnvironmentSpec& spec, double c);

// Bisection on [0, lambda*D] to absolute tolerance 1e-10. A root always
// exists there: Phi(0) >= 0, Phi decreases strictly, Phi(lambda*D) <= 0.
double solve_c_star(const EnvironmentSpec& spec);

// Explicit midpoint integration backward from t = T, with the advanced
// argument v(t + X) linearly interpolated on the grid. Requires dt <= C/10.
OracleSolution solve_value_function(const EnvironmentSpec& spec, double T, double dt);

inline bool baseline_decision(double c_star, double x, double mean_reward_at_x) {
  return mean_reward_at_x >= c_star * x;
}

// Long-run reward per unit time of the policy accepting exactly durations
// >= s:  p(s) = lambda E[r(X) 1(X >= s)] / (1 + lambda E[X 1(X >= s)]).
double renewal_rate(const EnvironmentSpec& spec, double s);

struct SandwichReport {
  double lower_violation;  // max over the grid of (w(t) - v(t))_+
  double upper_violation;  // max over the grid of (v(t) - w(t - C))_+
};
SandwichReport sandwich_violations(const OracleSolution& sol, double max_duration);

}  // namespace timealloc
