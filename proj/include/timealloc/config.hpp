#pragma once
// Experiment configuration: a flat key-value text file with sections
// [env], [algo.*], [oracle] and [sweep]. `#` starts a comment, keys are
// `key = value`. Unknown keys and malformed values raise
// std::invalid_argument naming the offending key.
//
// [env]      lambda, duration (uniform LO HI | discrete X:P ... | twopoint EPS),
//            reward (affine A B | quadratic A B C | table X:V ...),
//            noise (none | uniform HALFWIDTH | gaussian VARIANCE),
//            C, D, E, sigma (optional override of the derived proxy)
// [algo.known]    prune_delta (0 disables window pruning)
// [algo.bandit]   delta (number | auto), bins (number | auto), L (number | auto),
//                 beta (number | auto), kappa, eta_scale, xi_scale,
//                 drop_bias_terms (true | false)   -- also used by algo=finite
// [algo.monotone] delta (number | auto), zeta_scale
// [algo.threshold] s
// [oracle]   T, dt (value-function grid)
// [sweep]    T (list), replicas, replicas.ALGO overrides, algos (list), seed
//
// `auto` resolves per horizon: bandit delta 1/T^2, finite delta 1/T, monotone
// delta 1/T^2, bins from the horizon-matched bin-count rule, (L, beta) from
// the reward's functional form.

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "timealloc/env.hpp"
#include "timealloc/harness.hpp"
#include "timealloc/policy.hpp"

namespace timealloc {

struct KnownConfig {
  double prune_delta = 0;
};

struct BanditConfig {
  std::optional<double> delta;  // nullopt = auto
  std::optional<int> bins;
  std::optional<double> holder_L;
  std::optional<double> holder_beta;
  double kappa = 150;
  double eta_scale = 1;
  double xi_scale = 1;
  bool drop_bias_terms = false;
};

struct MonotoneConfig {
  std::optional<double> delta;
  double zeta_scale = 1;
};

struct ThresholdConfig {
  double s = 0;
};

struct OracleConfig {
  double horizon = 50;
  double dt = 1e-3;
};

struct SweepConfig {
  std::vector<double> horizons;
  std::uint64_t replicas = 50;
  std::vector<std::pair<std::string, std::uint64_t>> replica_overrides;
  std::vector<std::string> algos;
  std::uint64_t seed = 1;
};

struct ExperimentConfig {
  EnvironmentSpec env;
  KnownConfig known;
  BanditConfig bandit;
  MonotoneConfig monotone;
  ThresholdConfig threshold;
  OracleConfig oracle;
  SweepConfig sweep;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// Builds a policy for one run at horizon T. Algorithms: known, bandit,
// finite, monotone, naive, baseline, threshold. `baseline` solves for c*.
std::unique_ptr<Policy> make_policy(const ExperimentConfig& config, const std::string& algo,
                                    double T);

class ConfigPolicyFactory final : public PolicyFactory {
 public:
  explicit ConfigPolicyFactory(const ExperimentConfig& config) : config_(&config) {}
  std::unique_ptr<Policy> make_policy(const std::string& algo, double T) const override {
    return timealloc::make_policy(*config_, algo, T);
  }

 private:
  const ExperimentConfig* config_;
};

}  // namespace timealloc
