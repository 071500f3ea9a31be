#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_envs.hpp"
#include "timealloc/env.hpp"

using namespace timealloc;

TEST_CASE("idle times follow the exponential inverse CDF") {
  EnvironmentSpec env = testenv::unit_task();
  CHECK(sample_idle(env, 0.5) == doctest::Approx(0.6931471805599453).epsilon(1e-12));
  env.lambda = 2;
  CHECK(sample_idle(env, 0.5) == doctest::Approx(0.34657359027997264).epsilon(1e-12));
  env.lambda = 1;
  CHECK(sample_idle(env, 1.0 - 1e-12) > 0.0);
  CHECK(sample_idle(env, 1.0 - 1e-12) < 1e-11);
  CHECK_THROWS_AS(sample_idle(env, 0.0), std::domain_error);
  CHECK_THROWS_AS(sample_idle(env, 1.0), std::domain_error);
}

TEST_CASE("duration sampling inverts the CDF") {
  CHECK(sample_duration(Uniform{0, 3}, 0.5) == doctest::Approx(1.5));
  const DurationDist coin = Discrete{{1, 2}, {0.5, 0.5}};
  CHECK(sample_duration(coin, 0.75) == 2);
  CHECK(sample_duration(coin, 0.25) == 1);
  CHECK(sample_duration(coin, 0.0) == 1);
  CHECK(sample_duration(TwoPoint{0.0}, 0.49) == 1);
  CHECK(sample_duration(TwoPoint{0.0}, 0.51) == 2);
  CHECK_THROWS_AS(sample_duration(coin, 1.0), std::domain_error);
}

TEST_CASE("mean reward evaluates the configured form") {
  CHECK(mean_reward(testenv::affine_uniform(), 1.0) == doctest::Approx(0.5));
  CHECK(mean_reward(testenv::concave_gaussian(), 1.0) == doctest::Approx(0.5));
  CHECK(mean_reward(testenv::two_point(0.0), 2.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(mean_reward(testenv::affine_uniform(), 3.5), std::domain_error);
  CHECK_THROWS_AS(mean_reward(testenv::affine_uniform(), -0.1), std::domain_error);
}

TEST_CASE("reward sampling adds zero-mean noise") {
  auto env = testenv::affine_uniform();
  env.noise = NoNoise{};
  UniformStream stream(7);
  CHECK(sample_reward(env, 1.0, stream) == doctest::Approx(0.5));

  env.noise = UniformNoise{1};
  testenv::FixedStream median{0.5};
  CHECK(sample_reward(env, 1.0, median) == doctest::Approx(0.5));
}

TEST_CASE("noise proxies") {
  CHECK(noise_sigma(NoiseModel{UniformNoise{1}}) == 1.0);
  CHECK(noise_sigma(NoiseModel{GaussianNoise{0.1}}) == doctest::Approx(std::sqrt(0.1)));
  CHECK(noise_sigma(NoiseModel{NoNoise{}}) == 0.0);
}

TEST_CASE("holder constants derived from the form") {
  const auto affine = holder_constants(Affine{1, -0.5}, 3.0);
  CHECK(affine.L == doctest::Approx(1.0));
  CHECK(affine.beta == 1.0);
  const auto quad = holder_constants(Quadratic{-0.3, 1, -0.2}, 3.0);
  CHECK(quad.L == doctest::Approx(1.0));  // max(|1|, |-0.8|)
  CHECK(quad.beta == 1.0);
  CHECK_THROWS_AS(holder_constants(Table{{1}, {1}}, 3.0), std::invalid_argument);
}

TEST_CASE("empirical moments of the samplers") {
  const int n = 100000;
  UniformStream stream(42);
  double mean_duration = 0;
  for (int i = 0; i < n; ++i) mean_duration += sample_duration(Uniform{0, 3}, stream.next());
  mean_duration /= n;
  CHECK(std::abs(mean_duration - 1.5) < 0.02);

  for (const NoiseModel noise :
       {NoiseModel{UniformNoise{1}}, NoiseModel{GaussianNoise{0.1}}, NoiseModel{NoNoise{}}}) {
    UniformStream ns(43);
    double mean = 0;
    for (int i = 0; i < n; ++i) mean += sample_noise(noise, ns);
    mean /= n;
    CHECK(std::abs(mean) < 4.0 * noise_sigma(noise) / std::sqrt(static_cast<double>(n)) + 1e-12);
  }
}

TEST_CASE("streams are deterministic and decorrelated") {
  UniformStream a(123, 0);
  UniformStream b(123, 0);
  UniformStream c(123, 1);
  bool all_equal_other_stream = true;
  for (int i = 0; i < 100; ++i) {
    const double va = a.next();
    CHECK(va == b.next());
    CHECK(va > 0.0);
    CHECK(va < 1.0);
    if (va != c.next()) all_equal_other_stream = false;
  }
  CHECK_FALSE(all_equal_other_stream);
}

TEST_CASE("environment validation rejects broken specs") {
  auto env = testenv::affine_uniform();
  CHECK_NOTHROW(validate(env));

  auto bad_bounds = env;
  bad_bounds.reward_lower = 0.1;
  CHECK_THROWS_AS(validate(bad_bounds), std::invalid_argument);

  auto bad_probs = testenv::unit_task();
  bad_probs.duration = Discrete{{1}, {0.5}};
  CHECK_THROWS_AS(validate(bad_probs), std::invalid_argument);

  auto bad_support = testenv::unit_task();
  bad_support.duration = Discrete{{1, 2}, {0.5, 0.5}};  // 2 > C = 1
  CHECK_THROWS_AS(validate(bad_support), std::invalid_argument);

  auto bad_range = env;
  bad_range.reward_upper = 1.0;  // r(3) = 2.5 exceeds it
  CHECK_THROWS_AS(validate(bad_range), std::invalid_argument);

  auto table_on_uniform = env;
  table_on_uniform.reward = Table{{1}, {1}};
  CHECK_THROWS_AS(validate(table_on_uniform), std::invalid_argument);
}
