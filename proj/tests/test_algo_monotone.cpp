#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_envs.hpp"
#include "timealloc/algo_monotone.hpp"
#include "timealloc/oracle.hpp"
#include "timealloc/rng.hpp"

using namespace timealloc;

namespace {

MonotoneParams simple_params() {
  MonotoneParams p;
  p.lambda = 1;
  p.C = 3;
  p.D = 1;
  p.E = 0;
  p.sigma = 1;
  p.delta = 0.01;
  p.S = 21;
  return p;
}

}  // namespace

TEST_CASE("error term formula") {
  const auto p = simple_params();
  // (sqrt(1.25) + 3.5355) sqrt(ln 4400) + 0.5
  const double expected2 = (std::sqrt(1.25) + 5.0 / std::sqrt(2.0)) * std::sqrt(std::log(4400.0)) + 0.5;
  CHECK(monotone_error_term(p, 2) == doctest::Approx(expected2).epsilon(1e-12));
  CHECK(monotone_error_term(p, 2) == doctest::Approx(13.979).epsilon(1e-4));
  CHECK(monotone_error_term(p, 101) == doctest::Approx(1.35779).epsilon(1e-4));
  CHECK(monotone_error_term(p, 10'000'000'000ULL) < 1e-3);
  CHECK_THROWS_AS(monotone_error_term(p, 1), std::invalid_argument);
}

TEST_CASE("empirical per-time reward at the breakpoints") {
  MonotonePolicy policy(simple_params());
  CHECK_THROWS_AS(policy.p_value(0.0), std::logic_error);  // nothing observed yet

  policy.observe(1.0, true, 0.5);
  policy.observe(2.0, true, 1.5);
  CHECK(policy.proposals() == 2);
  CHECK(policy.p_value(1.5) == doctest::Approx(0.375).epsilon(1e-12));  // 0.75 / 2
  CHECK(policy.p_value(3.0) == doctest::Approx(0.0));
  CHECK(policy.p_value(0.0) == doctest::Approx(0.4).epsilon(1e-12));  // 1 / 2.5
  CHECK_THROWS_AS(policy.p_value(3.5), std::domain_error);

  // Piecewise constant on (x_k, x_{k+1}]: midpoints match the breakpoint above.
  CHECK(policy.p_value(1.5) == policy.p_value(2.0));
  CHECK(policy.p_value(0.5) == policy.p_value(1.0));
}

TEST_CASE("threshold decisions use >=") {
  MonotonePolicy policy(simple_params());
  CHECK(policy.decide(0.001));  // s_1 = 0
  CHECK(policy.threshold() == 0.0);
}

TEST_CASE("huge error terms keep every threshold potentially optimal") {
  MonotonePolicy policy(simple_params());
  policy.observe(1.0, true, 0.5);
  CHECK(policy.threshold() == 0.0);  // single observation: no error estimate yet
  policy.observe(2.0, true, 1.5);
  CHECK(policy.threshold() == 0.0);  // zeta(2) ~ 14 dominates every gap
}

TEST_CASE("with the error term disabled the threshold advances to the argmax region") {
  auto p = simple_params();
  p.zeta_scale = 0;
  MonotonePolicy policy(p);
  policy.observe(0.1, true, -1.0);
  CHECK(policy.threshold() == 0.0);
  policy.observe(2.0, true, 1.5);
  // p(0) = p(0.1) = 0.25/2.05 < p(2) = 0.375, and the membership margin is
  // zero, so only the argmax remains.
  CHECK(policy.threshold() == doctest::Approx(2.0));
  CHECK(policy.retained() == 1);  // the 0.1-duration observation was folded
  CHECK_FALSE(policy.decide(1.9));
  CHECK(policy.decide(2.0));  // boundary accepts
  CHECK_THROWS_AS(policy.p_value(1.0), std::domain_error);  // below s_n now
}

TEST_CASE("thresholds never decrease along a run") {
  auto p = simple_params();
  p.D = 2.5;
  p.E = -0.5;
  p.zeta_scale = 0.01;  // let the threshold move
  const auto env = testenv::affine_uniform();
  for (int rep = 0; rep < 20; ++rep) {
    UniformStream stream = UniformStream::for_replica(4500, static_cast<std::uint64_t>(rep));
    MonotonePolicy policy(p);
    double last = policy.threshold();
    for (int i = 0; i < 300; ++i) {
      double x = sample_duration(env.duration, stream.next());
      if (x <= 0) x = 1e-9;
      const bool accept = policy.decide(x);
      policy.observe(x, accept, accept ? sample_reward(env, x, stream) : 0.0);
      CHECK(policy.threshold() >= last);
      last = policy.threshold();
    }
  }
}

TEST_CASE("threshold stays below the optimal crossing with high probability") {
  const auto env = testenv::affine_uniform();
  const double c_star = solve_c_star(env);
  const double s_star = 0.5 / (1.0 - c_star);
  MonotoneParams p;
  p.lambda = env.lambda;
  p.C = env.max_duration;
  p.D = env.reward_upper;
  p.E = env.reward_lower;
  p.sigma = env.sigma;
  p.delta = 0.05;
  const double T = 100;
  p.S = 2.0 * (env.lambda * T + 1.0);
  const int replicas = 50;
  int violations = 0;
  for (int rep = 0; rep < replicas; ++rep) {
    UniformStream stream = UniformStream::for_replica(4600, static_cast<std::uint64_t>(rep));
    MonotonePolicy policy(p);
    bool violated = false;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(p.S); ++i) {
      double x = sample_duration(env.duration, stream.next());
      if (x <= 0) x = 1e-9;
      const bool accept = policy.decide(x);
      policy.observe(x, accept, accept ? sample_reward(env, x, stream) : 0.0);
      if (policy.threshold() > s_star) violated = true;
    }
    if (violated) ++violations;
  }
  CHECK(static_cast<double>(violations) / replicas <=
        0.05 + 3.0 * std::sqrt(0.05 * 0.95 / replicas));
}
