#pragma once
// Task-arrival environment: exponential idle times of rate lambda, i.i.d.
// task durations supported on (0, C], a deterministic mean-reward function
// bounded in [E, D] with E <= 0 <= D, and zero-mean observation noise.
//
// All sampling is inverse-CDF driven by explicit uniform variates, so a fixed
// variate stream reproduces a trajectory bit for bit.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include "timealloc/rng.hpp"

namespace timealloc {

struct Uniform {
  double lo = 0;
  double hi = 1;
};
struct Discrete {
  std::vector<double> points;  // strictly increasing
  std::vector<double> probs;   // same length, sums to 1
};
// Duration 1 w.p. 1/2 + eps, duration 2 w.p. 1/2 - eps.
struct TwoPoint {
  double eps = 0;
};
using DurationDist = std::variant<Uniform, Discrete, TwoPoint>;

struct Affine {
  double slope = 0;
  double intercept = 0;  // r(x) = slope * x + intercept
};
struct Quadratic {
  double a = 0;
  double b = 0;
  double c = 0;  // r(x) = a x^2 + b x + c
};
struct Table {
  std::vector<double> points;
  std::vector<double> values;
};
using RewardFn = std::variant<Affine, Quadratic, Table>;

struct NoNoise {};
struct UniformNoise {
  double halfwidth = 0;
};
struct GaussianNoise {
  double variance = 0;
};
using NoiseModel = std::variant<NoNoise, UniformNoise, GaussianNoise>;

struct EnvironmentSpec {
  double lambda = 1;  // arrival rate, > 0
  DurationDist duration;
  RewardFn reward;
  NoiseModel noise;
  double max_duration = 1;  // C
  double reward_upper = 1;  // D, >= 0
  double reward_lower = 0;  // E, <= 0
  double sigma = 0;         // subgaussian proxy for the noise
};

// Throws std::invalid_argument when an environment invariant is violated
// (bounds ordering, probabilities, support inside (0, C], reward range).
void validate(const EnvironmentSpec& spec);

// Subgaussian proxy: halfwidth for centered uniform noise (conservative),
// sqrt(variance) for Gaussian, 0 for noiseless.
double noise_sigma(const NoiseModel& noise);

struct HolderConstants {
  double L;
  double beta;
};
// Smallest Holder pair derivable from the functional form (max |r'| over
// [0, C], beta = 1). Only affine and quadratic rewards support this.
HolderConstants holder_constants(const RewardFn& fn, double max_duration);

double eval_reward(const RewardFn& fn, double x);

// Checked evaluation: throws std::domain_error unless x in [0, C].
double mean_reward(const EnvironmentSpec& spec, double x);

// Idle time -ln(u)/lambda; requires u in (0, 1).
double sample_idle(const EnvironmentSpec& spec, double u);

// Inverse-CDF duration sample; requires u in [0, 1).
double sample_duration(const DurationDist& dist, double u);

bool is_discrete(const DurationDist& dist);
// Support of a discrete duration law as (point, probability) pairs, sorted by
// point; throws std::invalid_argument for continuous laws.
std::vector<std::pair<double, double>> discrete_support(const DurationDist& dist);

// Zero-mean noise draw: inverse CDF for centered uniform noise (one variate),
// Box-Muller for Gaussian (two variates).
template <class Stream>
double sample_noise(const NoiseModel& noise, Stream& stream) {
  return std::visit(
      [&stream](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NoNoise>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, UniformNoise>) {
          return n.halfwidth * (2.0 * stream.next() - 1.0);
        } else {
          const double u1 = stream.next();
          const double u2 = stream.next();
          const double z =
              std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
          return std::sqrt(n.variance) * z;
        }
      },
      noise);
}

template <class Stream>
double sample_reward(const EnvironmentSpec& spec, double x, Stream& stream) {
  return mean_reward(spec, x) + sample_noise(spec.noise, stream);
}

}  // namespace timealloc
