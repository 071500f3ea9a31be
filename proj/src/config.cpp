#include "timealloc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "timealloc/algo_bandit.hpp"
#include "timealloc/algo_known.hpp"
#include "timealloc/algo_monotone.hpp"
#include "timealloc/oracle.hpp"

namespace timealloc {

namespace {

[[noreturn]] void bad_key(const std::string& section, const std::string& key,
                          const std::string& why) {
  throw std::invalid_argument("config: [" + section + "] " + key + ": " + why);
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& section, const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) bad_key(section, key, "trailing characters in '" + v + "'");
    return x;
  } catch (const std::invalid_argument&) {
    bad_key(section, key, "not a number: '" + v + "'");
  } catch (const std::out_of_range&) {
    bad_key(section, key, "out of range: '" + v + "'");
  }
}

std::uint64_t parse_count(const std::string& section, const std::string& key,
                          const std::string& v) {
  const double x = parse_double(section, key, v);
  if (x < 0 || x != std::floor(x)) bad_key(section, key, "expected a non-negative integer");
  return static_cast<std::uint64_t>(x);
}

bool parse_bool(const std::string& section, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_key(section, key, "expected true/false");
}

// "X:V" pairs, e.g. "1:0.5 2:2"
std::pair<std::vector<double>, std::vector<double>> parse_pairs(const std::string& section,
                                                                const std::string& key,
                                                                const std::vector<std::string>& toks,
                                                                std::size_t from) {
  std::vector<double> xs;
  std::vector<double> vs;
  for (std::size_t i = from; i < toks.size(); ++i) {
    const auto colon = toks[i].find(':');
    if (colon == std::string::npos) bad_key(section, key, "expected X:V pairs");
    xs.push_back(parse_double(section, key, toks[i].substr(0, colon)));
    vs.push_back(parse_double(section, key, toks[i].substr(colon + 1)));
  }
  if (xs.empty()) bad_key(section, key, "needs at least one X:V pair");
  return {std::move(xs), std::move(vs)};
}

struct Assign {
  ExperimentConfig* cfg;
  bool sigma_overridden = false;

  void apply(const std::string& section, const std::string& key, const std::string& value) {
    if (section == "env") return env_key(key, value);
    if (section == "algo.known") return known_key(key, value);
    if (section == "algo.bandit") return bandit_key(key, value);
    if (section == "algo.monotone") return monotone_key(key, value);
    if (section == "algo.threshold") return threshold_key(key, value);
    if (section == "oracle") return oracle_key(key, value);
    if (section == "sweep") return sweep_key(key, value);
    throw std::invalid_argument("config: unknown section [" + section + "]");
  }

  void env_key(const std::string& key, const std::string& value) {
    auto& env = cfg->env;
    if (key == "lambda") {
      env.lambda = parse_double("env", key, value);
    } else if (key == "C") {
      env.max_duration = parse_double("env", key, value);
    } else if (key == "D") {
      env.reward_upper = parse_double("env", key, value);
    } else if (key == "E") {
      env.reward_lower = parse_double("env", key, value);
    } else if (key == "sigma") {
      env.sigma = parse_double("env", key, value);
      sigma_overridden = true;
    } else if (key == "duration") {
      const auto toks = split_ws(value);
      if (toks.empty()) bad_key("env", key, "empty");
      if (toks[0] == "uniform" && toks.size() == 3) {
        env.duration = Uniform{parse_double("env", key, toks[1]), parse_double("env", key, toks[2])};
      } else if (toks[0] == "discrete") {
        auto [xs, ps] = parse_pairs("env", key, toks, 1);
        env.duration = Discrete{std::move(xs), std::move(ps)};
      } else if (toks[0] == "twopoint" && toks.size() == 2) {
        env.duration = TwoPoint{parse_double("env", key, toks[1])};
      } else {
        bad_key("env", key, "expected 'uniform LO HI', 'discrete X:P ...' or 'twopoint EPS'");
      }
    } else if (key == "reward") {
      const auto toks = split_ws(value);
      if (toks.empty()) bad_key("env", key, "empty");
      if (toks[0] == "affine" && toks.size() == 3) {
        env.reward = Affine{parse_double("env", key, toks[1]), parse_double("env", key, toks[2])};
      } else if (toks[0] == "quadratic" && toks.size() == 4) {
        env.reward = Quadratic{parse_double("env", key, toks[1]), parse_double("env", key, toks[2]),
                               parse_double("env", key, toks[3])};
      } else if (toks[0] == "table") {
        auto [xs, vs] = parse_pairs("env", key, toks, 1);
        env.reward = Table{std::move(xs), std::move(vs)};
      } else {
        bad_key("env", key, "expected 'affine A B', 'quadratic A B C' or 'table X:V ...'");
      }
    } else if (key == "noise") {
      const auto toks = split_ws(value);
      if (toks.empty()) bad_key("env", key, "empty");
      if (toks[0] == "none" && toks.size() == 1) {
        env.noise = NoNoise{};
      } else if (toks[0] == "uniform" && toks.size() == 2) {
        env.noise = UniformNoise{parse_double("env", key, toks[1])};
      } else if (toks[0] == "gaussian" && toks.size() == 2) {
        env.noise = GaussianNoise{parse_double("env", key, toks[1])};
      } else {
        bad_key("env", key, "expected 'none', 'uniform HALFWIDTH' or 'gaussian VARIANCE'");
      }
    } else {
      bad_key("env", key, "unknown key");
    }
  }

  void known_key(const std::string& key, const std::string& value) {
    if (key == "prune_delta") {
      cfg->known.prune_delta = parse_double("algo.known", key, value);
    } else {
      bad_key("algo.known", key, "unknown key");
    }
  }

  void bandit_key(const std::string& key, const std::string& value) {
    auto& b = cfg->bandit;
    if (key == "delta") {
      if (value != "auto") b.delta = parse_double("algo.bandit", key, value);
    } else if (key == "bins" || key == "M") {
      if (value != "auto") b.bins = static_cast<int>(parse_count("algo.bandit", key, value));
    } else if (key == "L") {
      if (value != "auto") b.holder_L = parse_double("algo.bandit", key, value);
    } else if (key == "beta") {
      if (value != "auto") b.holder_beta = parse_double("algo.bandit", key, value);
    } else if (key == "kappa") {
      b.kappa = parse_double("algo.bandit", key, value);
    } else if (key == "eta_scale") {
      b.eta_scale = parse_double("algo.bandit", key, value);
    } else if (key == "xi_scale") {
      b.xi_scale = parse_double("algo.bandit", key, value);
    } else if (key == "drop_bias_terms") {
      b.drop_bias_terms = parse_bool("algo.bandit", key, value);
    } else {
      bad_key("algo.bandit", key, "unknown key");
    }
  }

  void monotone_key(const std::string& key, const std::string& value) {
    if (key == "delta") {
      if (value != "auto") cfg->monotone.delta = parse_double("algo.monotone", key, value);
    } else if (key == "zeta_scale") {
      cfg->monotone.zeta_scale = parse_double("algo.monotone", key, value);
    } else {
      bad_key("algo.monotone", key, "unknown key");
    }
  }

  void threshold_key(const std::string& key, const std::string& value) {
    if (key == "s") {
      cfg->threshold.s = parse_double("algo.threshold", key, value);
    } else {
      bad_key("algo.threshold", key, "unknown key");
    }
  }

  void oracle_key(const std::string& key, const std::string& value) {
    if (key == "T") {
      cfg->oracle.horizon = parse_double("oracle", key, value);
    } else if (key == "dt") {
      cfg->oracle.dt = parse_double("oracle", key, value);
    } else {
      bad_key("oracle", key, "unknown key");
    }
  }

  void sweep_key(const std::string& key, const std::string& value) {
    auto& s = cfg->sweep;
    if (key == "T") {
      s.horizons.clear();
      for (const auto& tok : split_ws(value)) s.horizons.push_back(parse_double("sweep", key, tok));
      if (s.horizons.empty()) bad_key("sweep", key, "empty horizon list");
    } else if (key == "replicas") {
      s.replicas = parse_count("sweep", key, value);
    } else if (key.rfind("replicas.", 0) == 0) {
      s.replica_overrides.emplace_back(key.substr(9), parse_count("sweep", key, value));
    } else if (key == "algos") {
      s.algos = split_ws(value);
      if (s.algos.empty()) bad_key("sweep", key, "empty algorithm list");
    } else if (key == "seed") {
      s.seed = parse_count("sweep", key, value);
    } else {
      bad_key("sweep", key, "unknown key");
    }
  }
};

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  Assign assign{&cfg};
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: malformed section header at line " +
                                    std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected 'key = value' at line " +
                                  std::to_string(lineno));
    if (section.empty())
      throw std::invalid_argument("config: key outside any section at line " +
                                  std::to_string(lineno));
    assign.apply(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  if (!assign.sigma_overridden) cfg.env.sigma = noise_sigma(cfg.env.noise);
  validate(cfg.env);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return parse_config(in);
}

std::unique_ptr<Policy> make_policy(const ExperimentConfig& config, const std::string& algo,
                                    double T) {
  const auto& env = config.env;
  if (algo == "naive") return std::make_unique<AcceptAllPolicy>();
  if (algo == "threshold") return std::make_unique<ThresholdPolicy>(config.threshold.s);
  if (algo == "baseline")
    return std::make_unique<BaselineOraclePolicy>(env.reward, solve_c_star(env));
  if (algo == "known")
    return std::make_unique<KnownRewardPolicy>(env.reward, env.lambda, env.reward_upper,
                                               env.reward_lower, config.known.prune_delta);

  if (algo == "bandit" || algo == "finite") {
    BanditParams params;
    params.lambda = env.lambda;
    params.C = env.max_duration;
    params.D = env.reward_upper;
    params.E = env.reward_lower;
    params.sigma = env.sigma;
    params.kappa = config.bandit.kappa;
    params.eta_scale = config.bandit.eta_scale;
    params.xi_scale = config.bandit.xi_scale;
    params.drop_bias_terms = config.bandit.drop_bias_terms;
    if (algo == "finite") {
      if (!is_discrete(env.duration))
        throw std::invalid_argument("algo finite: requires a discrete duration law");
      params.delta = config.bandit.delta.value_or(1.0 / T);
      std::vector<double> support;
      for (const auto& [x, p] : discrete_support(env.duration)) support.push_back(x);
      return std::make_unique<BanditPolicy>(BanditPolicy::finite_support(params, std::move(support)));
    }
    params.delta = config.bandit.delta.value_or(1.0 / (T * T));
    if (config.bandit.holder_L && config.bandit.holder_beta) {
      params.holder_L = *config.bandit.holder_L;
      params.holder_beta = *config.bandit.holder_beta;
    } else {
      const auto hc = holder_constants(env.reward, env.max_duration);
      params.holder_L = config.bandit.holder_L.value_or(hc.L);
      params.holder_beta = config.bandit.holder_beta.value_or(hc.beta);
    }
    const int bins = config.bandit.bins.value_or(
        regressogram_bins(env.max_duration, params.holder_L, params.holder_beta, env.lambda, T));
    return std::make_unique<BanditPolicy>(BanditPolicy::regressogram(params, bins));
  }

  if (algo == "monotone") {
    MonotoneParams params;
    params.lambda = env.lambda;
    params.C = env.max_duration;
    params.D = env.reward_upper;
    params.E = env.reward_lower;
    params.sigma = env.sigma;
    params.delta = config.monotone.delta.value_or(1.0 / (T * T));
    params.S = 2.0 * (env.lambda * T + 1.0);
    params.zeta_scale = config.monotone.zeta_scale;
    return std::make_unique<MonotonePolicy>(params);
  }

  throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

}  // namespace timealloc
