#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_envs.hpp"
#include "timealloc/oracle.hpp"
#include "timealloc/rng.hpp"

using namespace timealloc;

namespace {

EnvironmentSpec never_profitable() {
  EnvironmentSpec env;
  env.lambda = 1;
  env.duration = Uniform{0, 1};
  env.reward = Affine{0, -1};  // r == -1
  env.noise = NoNoise{};
  env.max_duration = 1;
  env.reward_upper = 0;
  env.reward_lower = -1;
  return env;
}

}  // namespace

TEST_CASE("phi evaluates the expected clipped margin") {
  CHECK(phi(never_profitable(), 0.3) == doctest::Approx(-0.3).epsilon(1e-12));

  // Analytic: integral of (x - 0.5)/3 over [0.5, 3] = 2.5^2 / 6.
  CHECK(phi(testenv::affine_uniform(), 0.0) == doctest::Approx(2.5 * 2.5 / 6.0).epsilon(1e-10));

  CHECK(phi(testenv::unit_task(), 0.5) == doctest::Approx(0.0));

  CHECK_THROWS_AS(phi(testenv::unit_task(), -0.1), std::domain_error);
}

TEST_CASE("phi decreases strictly and brackets the root") {
  for (const auto& env : {testenv::affine_uniform(), testenv::concave_gaussian(),
                          testenv::two_point(0.1), testenv::unit_task()}) {
    UniformStream stream(5);
    for (int i = 0; i < 20; ++i) {
      const double c1 = 2.0 * stream.next();
      const double c2 = c1 + 0.05 + stream.next();
      CHECK(phi(env, c1) > phi(env, c2));
    }
    const double c_star = solve_c_star(env);
    CHECK(std::abs(phi(env, c_star)) <= 1e-9);
    if (c_star > 1e-6) {
      CHECK(phi(env, c_star - 1e-6) > 0);
      CHECK(phi(env, c_star + 1e-6) < 0);
    }
  }
}

TEST_CASE("c* closed forms") {
  // lambda (1 - c) = c  =>  c = 1/2
  CHECK(solve_c_star(testenv::unit_task()) == doctest::Approx(0.5).epsilon(1e-9));
  // Two-point instance at eps = 0.
  CHECK(solve_c_star(testenv::two_point(0.0)) == doctest::Approx(0.5).epsilon(1e-9));
  // Affine experiment vs. bisection on the hand-derived closed form of Phi.
  CHECK(solve_c_star(testenv::affine_uniform()) ==
        doctest::Approx(testenv::affine_c_star_oracle()).epsilon(1e-8));
  // Nothing profitable: the root sits at 0.
  CHECK(solve_c_star(never_profitable()) == 0.0);
}

TEST_CASE("discrete grid approximation agrees with quadrature") {
  const auto continuous = testenv::affine_uniform();
  auto discrete = continuous;
  const int k = 10000;
  std::vector<double> xs(k);
  std::vector<double> ps(k, 1.0 / k);
  for (int i = 0; i < k; ++i) xs[i] = 3.0 * (i + 0.5) / k;
  discrete.duration = Discrete{std::move(xs), std::move(ps)};
  CHECK(std::abs(solve_c_star(discrete) - solve_c_star(continuous)) <= 1e-3);
}

TEST_CASE("value function of a worthless environment is identically zero") {
  const auto sol = solve_value_function(never_profitable(), 10.0, 0.05);
  for (double v : sol.values) CHECK(v == 0.0);
}

TEST_CASE("value function respects the affine sandwich") {
  // Degenerate law X == 1, r == 1: c* = 1/2, so v(0) must land in
  // [w(0), w(-C)] = [10, 10.5].
  const auto sol = solve_value_function(testenv::unit_task(), 20.0, 1e-3);
  CHECK(sol.c_star == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.values.front() >= 10.0 - 1e-3);
  CHECK(sol.values.front() <= 10.5 + 1e-3);
  const auto report = sandwich_violations(sol, 1.0);
  CHECK(report.lower_violation <= 10.0 * sol.grid_step * 1.0 * 1.0);
  CHECK(report.upper_violation <= 10.0 * sol.grid_step * 1.0 * 1.0);

  // Continuous environment at a coarser grid.
  const auto env = testenv::affine_uniform();
  const double dt = 5e-3;
  const auto affine_sol = solve_value_function(env, 10.0, dt);
  const auto affine_report = sandwich_violations(affine_sol, env.max_duration);
  const double tol = 10.0 * dt * env.lambda * env.reward_upper;
  CHECK(affine_report.lower_violation <= tol);
  CHECK(affine_report.upper_violation <= tol);
  // v decreases toward v(T) = 0.
  CHECK(affine_sol.values.front() > affine_sol.values.back());
  CHECK(affine_sol.values.back() == 0.0);
}

TEST_CASE("value function rejects a too-coarse grid") {
  CHECK_THROWS_AS(solve_value_function(testenv::unit_task(), 10.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(solve_value_function(testenv::unit_task(), -1.0, 1e-3), std::invalid_argument);
}

TEST_CASE("value interpolation") {
  const auto sol = solve_value_function(testenv::unit_task(), 20.0, 1e-2);
  CHECK(sol.value_at(20.0) == 0.0);
  CHECK(sol.value_at(25.0) == 0.0);
  CHECK(sol.value_at(0.0) == sol.values.front());
  const double mid = sol.value_at(10.0 + 0.5 * sol.grid_step);
  const std::size_t j = static_cast<std::size_t>(std::llround(10.0 / sol.grid_step));
  CHECK(mid == doctest::Approx(0.5 * (sol.values[j] + sol.values[j + 1])));
}

TEST_CASE("baseline decisions split at profitability c*") {
  const double c_star = solve_c_star(testenv::affine_uniform());
  CHECK(baseline_decision(c_star, 1.0, 0.5));        // 0.5 >= c* * 1
  CHECK_FALSE(baseline_decision(c_star, 0.6, 0.1));  // 0.1 < c* * 0.6
  CHECK(baseline_decision(0.0, 2.0, 0.0));           // boundary: r >= 0 accepted
}

TEST_CASE("renewal rate closed forms") {
  // Affine experiment: p(0) = E[r] / (1 + E[X]) = 1 / 2.5.
  CHECK(renewal_rate(testenv::affine_uniform(), 0.0) == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(renewal_rate(testenv::affine_uniform(), 3.0) == doctest::Approx(0.0));
  // Two-point instance: accepting both values earns exactly c* = 1/2.
  CHECK(renewal_rate(testenv::two_point(0.0), 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  // At the profitability crossing s* the threshold policy earns c*.
  const double c_star = solve_c_star(testenv::affine_uniform());
  const double s_star = 0.5 / (1.0 - c_star);
  CHECK(renewal_rate(testenv::affine_uniform(), s_star) == doctest::Approx(c_star).epsilon(1e-8));
}
