#pragma once
// Seeded simulation of (environment x policy) runs to horizon T, regret
// accounting against c*T, Monte Carlo sweeps over a (T, algorithm) grid, and
// the CSV outputs.
//
// A run draws idle time, draws a duration, asks the policy, draws the reward
// when accepted, and reports the outcome back; it stops with the first
// proposal after which the elapsed time sum(S_i + X_i a_i) exceeds T, and
// that last task counts in full. Variates are consumed in a fixed order
// (idle, duration, then noise only on accept), so a run is bit-reproducible
// from its seed alone regardless of thread count.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "timealloc/env.hpp"
#include "timealloc/policy.hpp"
#include "timealloc/rng.hpp"

namespace timealloc {

struct TrajectoryEvent {
  double arrival;   // t_n, when the proposal was made
  double idle;      // S_n
  double duration;  // X_n
  bool accepted;
  double reward;    // realized Y when accepted, 0 otherwise
};

struct Trajectory {
  std::vector<TrajectoryEvent> events;
  double elapsed = 0;       // sum(S_i + X_i a_i) at stop, > T
  double total_reward = 0;  // sum of accepted Y
  std::uint64_t proposals = 0;
};

template <class Stream>
Trajectory simulate_stream(const EnvironmentSpec& spec, Policy& policy, double T,
                           Stream& variates) {
  if (!(T > 0)) throw std::invalid_argument("simulate: horizon must be > 0");
  Trajectory out;
  double elapsed = 0;
  for (;;) {
    const double idle = sample_idle(spec, variates.next());
    const double x = sample_duration(spec.duration, variates.next());
    const double arrival = elapsed + idle;
    const bool accepted = policy.decide(x);
    double y = 0;
    if (accepted) {
      y = sample_reward(spec, x, variates);
      out.total_reward += y;
      elapsed = arrival + x;
    } else {
      elapsed = arrival;
    }
    policy.observe(x, accepted, y);
    out.events.push_back({arrival, idle, x, accepted, y});
    if (elapsed > T) break;
  }
  out.elapsed = elapsed;
  out.proposals = out.events.size();
  return out;
}

Trajectory simulate(const EnvironmentSpec& spec, Policy& policy, double T, std::uint64_t seed,
                    std::uint64_t replica = 0);

inline double regret(double c_star, double T, double realized_reward) {
  return c_star * T - realized_reward;
}

struct RunRecord {
  std::string algo;
  double T;
  std::uint64_t seed;
  double regret;
  double reward;
  std::uint64_t theta;
  double elapsed;
};

struct SweepPoint {
  std::string algo;
  double T;
  double mean_regret;
  double stderr_regret;
  std::uint64_t replicas;
};

// CSV schemas are fixed: runs carry `algo,T,seed,regret,reward,theta,elapsed`
// and aggregates `algo,T,mean_regret,stderr,replicas`.
void write_runs_csv(std::ostream& os, const std::vector<RunRecord>& rows);
void write_summary_csv(std::ostream& os, const std::vector<SweepPoint>& rows);

// Per-trajectory decision map plus the suboptimal region {x : r(x) < c* x}
// sampled on a 200-point duration grid; one `kind` column distinguishes rows.
void write_decision_map(std::ostream& os, const Trajectory& trajectory,
                        const EnvironmentSpec& spec, double c_star);

struct SweepRequest {
  std::vector<std::string> algos;
  std::vector<double> horizons;
  std::uint64_t base_seed = 1;
  std::uint64_t replicas = 50;
  // Per-algorithm replica overrides (e.g. more runs for low-variance policies).
  std::vector<std::pair<std::string, std::uint64_t>> replica_overrides;
};

struct SweepResult {
  std::vector<RunRecord> runs;        // sorted by (algo, T, seed)
  std::vector<SweepPoint> aggregates;  // same ordering, one row per (algo, T)
};

// `make_policy` builds a fresh policy for (algo, T); replica k of a point runs
// on the stream seeded base_seed + k. Replicas run on `threads` workers; the
// reduction is ordered, so results do not depend on the thread count.
class PolicyFactory {
 public:
  virtual ~PolicyFactory() = default;
  virtual std::unique_ptr<Policy> make_policy(const std::string& algo, double T) const = 0;
};

SweepResult run_sweep(const EnvironmentSpec& spec, double c_star, const SweepRequest& request,
                      const PolicyFactory& factory, unsigned threads = 1);

}  // namespace timealloc
