#pragma once
// Shared environment fixtures and small numeric oracles for the test suites.

#include <cmath>
#include <functional>

#include "timealloc/env.hpp"

namespace testenv {

// Affine experiment: r(x) = x - 0.5, durations U[0,3], centered uniform noise
// of halfwidth 1, lambda = 1.
inline timealloc::EnvironmentSpec affine_uniform() {
  timealloc::EnvironmentSpec env;
  env.lambda = 1;
  env.duration = timealloc::Uniform{0, 3};
  env.reward = timealloc::Affine{1, -0.5};
  env.noise = timealloc::UniformNoise{1};
  env.max_duration = 3;
  env.reward_upper = 2.5;
  env.reward_lower = -0.5;
  env.sigma = 1;
  return env;
}

// Concave experiment: r(x) = -0.3 x^2 + x - 0.2, durations U[0,3], Gaussian
// noise of variance 0.1.
inline timealloc::EnvironmentSpec concave_gaussian() {
  timealloc::EnvironmentSpec env;
  env.lambda = 1;
  env.duration = timealloc::Uniform{0, 3};
  env.reward = timealloc::Quadratic{-0.3, 1, -0.2};
  env.noise = timealloc::GaussianNoise{0.1};
  env.max_duration = 3;
  env.reward_upper = 19.0 / 30.0;  // max at x = 5/3
  env.reward_lower = -0.2;
  env.sigma = std::sqrt(0.1);
  return env;
}

// Two-point instance: X = 1 w.p. 1/2+eps, 2 w.p. 1/2-eps, r(1) = 1/2,
// r(2) = 2, centered uniform noise of halfwidth 1.
inline timealloc::EnvironmentSpec two_point(double eps) {
  timealloc::EnvironmentSpec env;
  env.lambda = 1;
  env.duration = timealloc::TwoPoint{eps};
  env.reward = timealloc::Table{{1, 2}, {0.5, 2}};
  env.noise = timealloc::UniformNoise{1};
  env.max_duration = 2;
  env.reward_upper = 2;
  env.reward_lower = 0;
  env.sigma = 1;
  return env;
}

// Degenerate environment: X = 1 always, r(1) = 1, noiseless.
inline timealloc::EnvironmentSpec unit_task() {
  timealloc::EnvironmentSpec env;
  env.lambda = 1;
  env.duration = timealloc::Discrete{{1}, {1}};
  env.reward = timealloc::Table{{1}, {1}};
  env.noise = timealloc::NoNoise{};
  env.max_duration = 1;
  env.reward_upper = 1;
  env.reward_lower = 0;
  env.sigma = 0;
  return env;
}

// Bisection root of a strictly decreasing function on [lo, hi].
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-12) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Closed-form Phi for the affine experiment (piecewise integral done by hand):
// Phi(c) = (3(1-c) - 0.5)^2 / (6(1-c)) - c for c < 1.
inline double affine_phi_closed_form(double c) {
  const double a = 3.0 * (1.0 - c) - 0.5;
  return a * a / (6.0 * (1.0 - c)) - c;
}

inline double affine_c_star_oracle() {
  return bisect_root(affine_phi_closed_form, 0.0, 1.0 - 1e-9);
}

// Variate source with a constant output, for pinned-variate simulations.
struct FixedStream {
  double value;
  double next() { return value; }
};

}  // namespace testenv
