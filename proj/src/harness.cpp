#include "timealloc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace timealloc {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Trajectory simulate(const EnvironmentSpec& spec, Policy& policy, double T, std::uint64_t seed,
                    std::uint64_t replica) {
  UniformStream stream = UniformStream::for_replica(seed, replica);
  return simulate_stream(spec, policy, T, stream);
}

void write_runs_csv(std::ostream& os, const std::vector<RunRecord>& rows) {
  os << "algo,T,seed,regret,reward,theta,elapsed\n";
  for (const auto& r : rows) {
    os << r.algo << ',' << fmt(r.T) << ',' << r.seed << ',' << fmt(r.regret) << ','
       << fmt(r.reward) << ',' << r.theta << ',' << fmt(r.elapsed) << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::vector<SweepPoint>& rows) {
  os << "algo,T,mean_regret,stderr,replicas\n";
  for (const auto& r : rows) {
    os << r.algo << ',' << fmt(r.T) << ',' << fmt(r.mean_regret) << ',' << fmt(r.stderr_regret)
       << ',' << r.replicas << '\n';
  }
}

void write_decision_map(std::ostream& os, const Trajectory& trajectory,
                        const EnvironmentSpec& spec, double c_star) {
  os << "kind,t,duration,flag\n";
  for (const auto& e : trajectory.events) {
    os << "decision," << fmt(e.arrival) << ',' << fmt(e.duration) << ',' << (e.accepted ? 1 : 0)
       << '\n';
  }
  constexpr int kGridPoints = 200;
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = spec.max_duration * static_cast<double>(i) / (kGridPoints - 1);
    const bool suboptimal = eval_reward(spec.reward, x) < c_star * x;
    os << "boundary,," << fmt(x) << ',' << (suboptimal ? 1 : 0) << '\n';
  }
}

SweepResult run_sweep(const EnvironmentSpec& spec, double c_star, const SweepRequest& request,
                      const PolicyFactory& factory, unsigned threads) {
  struct Task {
    std::string algo;
    double T;
    std::uint64_t replica;
  };
  std::vector<Task> tasks;
  auto replicas_for = [&](const std::string& algo) {
    for (const auto& [name, count] : request.replica_overrides)
      if (name == algo) return count;
    return request.replicas;
  };
  for (const auto& algo : request.algos) {
    for (double T : request.horizons) {
      const std::uint64_t count = replicas_for(algo);
      for (std::uint64_t k = 0; k < count; ++k) tasks.push_back({algo, T, k});
    }
  }

  std::vector<RunRecord> runs(tasks.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      auto policy = factory.make_policy(task.algo, task.T);
      const std::uint64_t seed = request.base_seed + task.replica;
      const Trajectory traj = simulate(spec, *policy, task.T, seed);
      runs[i] = {task.algo,
                 task.T,
                 seed,
                 regret(c_star, task.T, traj.total_reward),
                 traj.total_reward,
                 traj.proposals,
                 traj.elapsed};
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::sort(runs.begin(), runs.end(), [](const RunRecord& a, const RunRecord& b) {
    if (a.algo != b.algo) return a.algo < b.algo;
    if (a.T != b.T) return a.T < b.T;
    return a.seed < b.seed;
  });

  std::vector<SweepPoint> aggregates;
  for (std::size_t i = 0; i < runs.size();) {
    std::size_t j = i;
    double sum = 0;
    while (j < runs.size() && runs[j].algo == runs[i].algo && runs[j].T == runs[i].T) {
      sum += runs[j].regret;
      ++j;
    }
    const auto count = static_cast<double>(j - i);
    const double mean = sum / count;
    double var = 0;
    for (std::size_t k = i; k < j; ++k) var += (runs[k].regret - mean) * (runs[k].regret - mean);
    const double sd = count > 1 ? std::sqrt(var / (count - 1)) : 0.0;
    aggregates.push_back({runs[i].algo, runs[i].T, mean, sd / std::sqrt(count), j - i});
    i = j;
  }

  return {std::move(runs), std::move(aggregates)};
}

}  // namespace timealloc
