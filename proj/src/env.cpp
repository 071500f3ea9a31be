#include "timealloc/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace timealloc {

namespace {

constexpr double kProbTol = 1e-12;

const Table* as_table(const RewardFn& fn) { return std::get_if<Table>(&fn); }

double table_lookup(const Table& t, double x) {
  // Support points originate from configuration and are compared exactly.
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    if (t.points[i] == x) return t.values[i];
  }
  throw std::domain_error("table reward: no entry for duration " + std::to_string(x));
}

}  // namespace

void validate(const EnvironmentSpec& spec) {
  if (!(spec.lambda > 0)) throw std::invalid_argument("env: lambda must be > 0");
  if (!(spec.max_duration > 0)) throw std::invalid_argument("env: C must be > 0");
  if (!(spec.reward_lower <= 0 && 0 <= spec.reward_upper))
    throw std::invalid_argument("env: bounds must satisfy E <= 0 <= D");
  if (spec.sigma < 0) throw std::invalid_argument("env: sigma must be >= 0");

  const double C = spec.max_duration;
  if (const auto* u = std::get_if<Uniform>(&spec.duration)) {
    if (!(0 <= u->lo && u->lo < u->hi && u->hi <= C))
      throw std::invalid_argument("env: uniform duration support must lie in [0, C]");
  } else if (const auto* d = std::get_if<Discrete>(&spec.duration)) {
    if (d->points.empty() || d->points.size() != d->probs.size())
      throw std::invalid_argument("env: discrete duration needs matching points/probs");
    double total = 0;
    for (std::size_t i = 0; i < d->points.size(); ++i) {
      if (!(d->points[i] > 0 && d->points[i] <= C))
        throw std::invalid_argument("env: discrete support must lie in (0, C]");
      if (i > 0 && !(d->points[i] > d->points[i - 1]))
        throw std::invalid_argument("env: discrete support must be strictly increasing");
      if (d->probs[i] < 0) throw std::invalid_argument("env: negative probability");
      total += d->probs[i];
    }
    if (std::abs(total - 1.0) > kProbTol)
      throw std::invalid_argument("env: discrete probabilities must sum to 1");
  } else if (const auto* tp = std::get_if<TwoPoint>(&spec.duration)) {
    if (!(std::abs(tp->eps) <= 0.5)) throw std::invalid_argument("env: two-point eps in [-1/2, 1/2]");
    if (C < 2) throw std::invalid_argument("env: two-point law needs C >= 2");
  }

  // Reward range [E, D] over the duration support.
  const double tol = 1e-9;
  auto check_value = [&](double r) {
    if (r < spec.reward_lower - tol || r > spec.reward_upper + tol)
      throw std::invalid_argument("env: reward leaves [E, D]");
  };
  if (const auto* t = as_table(spec.reward)) {
    if (!is_discrete(spec.duration))
      throw std::invalid_argument("env: table reward requires a discrete duration law");
    for (double v : t->values) check_value(v);
  } else if (const auto* a = std::get_if<Affine>(&spec.reward)) {
    check_value(a->intercept);
    check_value(a->slope * C + a->intercept);
  } else if (const auto* q = std::get_if<Quadratic>(&spec.reward)) {
    check_value(q->c);
    check_value(q->a * C * C + q->b * C + q->c);
    if (q->a != 0) {
      const double vertex = -q->b / (2 * q->a);
      if (vertex > 0 && vertex < C) check_value((q->a * vertex + q->b) * vertex + q->c);
    }
  }
}

double noise_sigma(const NoiseModel& noise) {
  return std::visit(
      [](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NoNoise>) return 0.0;
        if constexpr (std::is_same_v<T, UniformNoise>) return n.halfwidth;
        if constexpr (std::is_same_v<T, GaussianNoise>) return std::sqrt(n.variance);
      },
      noise);
}

HolderConstants holder_constants(const RewardFn& fn, double max_duration) {
  if (const auto* a = std::get_if<Affine>(&fn)) {
    return {std::abs(a->slope), 1.0};
  }
  if (const auto* q = std::get_if<Quadratic>(&fn)) {
    const double at0 = std::abs(q->b);
    const double atC = std::abs(2 * q->a * max_duration + q->b);
    return {std::max(at0, atC), 1.0};
  }
  throw std::invalid_argument("holder_constants: not derivable for table rewards");
}

double eval_reward(const RewardFn& fn, double x) {
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Affine>) return f.slope * x + f.intercept;
        if constexpr (std::is_same_v<T, Quadratic>) return (f.a * x + f.b) * x + f.c;
        if constexpr (std::is_same_v<T, Table>) return table_lookup(f, x);
      },
      fn);
}

double mean_reward(const EnvironmentSpec& spec, double x) {
  if (!(x >= 0 && x <= spec.max_duration))
    throw std::domain_error("mean_reward: duration outside [0, C]");
  return eval_reward(spec.reward, x);
}

double sample_idle(const EnvironmentSpec& spec, double u) {
  if (!(u > 0 && u < 1)) throw std::domain_error("sample_idle: variate must lie in (0, 1)");
  return -std::log(u) / spec.lambda;
}

double sample_duration(const DurationDist& dist, double u) {
  if (!(u >= 0 && u < 1)) throw std::domain_error("sample_duration: variate must lie in [0, 1)");
  if (const auto* uni = std::get_if<Uniform>(&dist)) {
    return uni->lo + u * (uni->hi - uni->lo);
  }
  if (const auto* d = std::get_if<Discrete>(&dist)) {
    double cum = 0;
    for (std::size_t i = 0; i < d->points.size(); ++i) {
      cum += d->probs[i];
      if (u < cum || i + 1 == d->points.size()) return d->points[i];
    }
  }
  const auto& tp = std::get<TwoPoint>(dist);
  return u < 0.5 + tp.eps ? 1.0 : 2.0;
}

bool is_discrete(const DurationDist& dist) {
  return !std::holds_alternative<Uniform>(dist);
}

std::vector<std::pair<double, double>> discrete_support(const DurationDist& dist) {
  if (const auto* d = std::get_if<Discrete>(&dist)) {
    std::vector<std::pair<double, double>> out;
    out.reserve(d->points.size());
    for (std::size_t i = 0; i < d->points.size(); ++i) out.emplace_back(d->points[i], d->probs[i]);
    return out;
  }
  if (const auto* tp = std::get_if<TwoPoint>(&dist)) {
    return {{1.0, 0.5 + tp->eps}, {2.0, 0.5 - tp->eps}};
  }
  throw std::invalid_argument("discrete_support: duration law is continuous");
}

}  // namespace timealloc
