// Command-line front end: `oracle` solves the benchmark for a configured
// environment, `run` simulates a single seeded trajectory, `sweep` runs the
// Monte Carlo grid and writes the runs/summary CSVs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "timealloc/config.hpp"
#include "timealloc/harness.hpp"
#include "timealloc/oracle.hpp"

namespace {

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

int cmd_oracle(const std::string& config_path) {
  const auto cfg = timealloc::load_config(config_path);
  const auto sol =
      timealloc::solve_value_function(cfg.env, cfg.oracle.horizon, cfg.oracle.dt);
  const auto sandwich = timealloc::sandwich_violations(sol, cfg.env.max_duration);
  std::printf("c_star,v0,w0,lower_violation,upper_violation\n");
  std::printf("%.12g,%.12g,%.12g,%.12g,%.12g\n", sol.c_star, sol.values.front(), sol.w(0.0),
              sandwich.lower_violation, sandwich.upper_violation);
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& algo, double T,
            std::uint64_t seed, const std::string& decisions_path) {
  const auto cfg = timealloc::load_config(config_path);
  const double c_star = timealloc::solve_c_star(cfg.env);
  auto policy = timealloc::make_policy(cfg, algo, T);
  const auto traj = timealloc::simulate(cfg.env, *policy, T, seed);

  std::vector<timealloc::RunRecord> rows = {
      {algo, T, seed, timealloc::regret(c_star, T, traj.total_reward), traj.total_reward,
       traj.proposals, traj.elapsed}};
  timealloc::write_runs_csv(std::cout, rows);

  if (!decisions_path.empty()) {
    std::ofstream os(decisions_path);
    if (!os) throw std::runtime_error("cannot open " + decisions_path);
    timealloc::write_decision_map(os, traj, cfg.env, c_star);
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, unsigned threads) {
  const auto cfg = timealloc::load_config(config_path);
  if (cfg.sweep.algos.empty() || cfg.sweep.horizons.empty())
    throw std::invalid_argument("config: [sweep] must list algos and T");
  const double c_star = timealloc::solve_c_star(cfg.env);

  timealloc::SweepRequest request;
  request.algos = cfg.sweep.algos;
  request.horizons = cfg.sweep.horizons;
  request.base_seed = cfg.sweep.seed;
  request.replicas = cfg.sweep.replicas;
  request.replica_overrides = cfg.sweep.replica_overrides;

  const timealloc::ConfigPolicyFactory factory(cfg);
  const auto result = timealloc::run_sweep(cfg.env, c_star, request, factory, threads);

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream os(out_dir + "/runs.csv");
    timealloc::write_runs_csv(os, result.runs);
  }
  {
    std::ofstream os(out_dir + "/summary.csv");
    timealloc::write_summary_csv(os, result.aggregates);
  }
  for (const auto& point : result.aggregates) {
    std::printf("%s T=%g mean_regret=%.6g stderr=%.3g replicas=%llu\n", point.algo.c_str(),
                point.T, point.mean_regret, point.stderr_regret,
                static_cast<unsigned long long>(point.replicas));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online time-allocation policies: oracle benchmark, seeded runs, Monte Carlo sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string algo = "known";
  std::string decisions_path;
  std::string out_dir = "sweep_out";
  double T = 1000;
  std::uint64_t seed = 1;
  unsigned threads = default_threads();

  auto* oracle = app.add_subcommand("oracle", "Solve c*, the value function and its affine bounds");
  oracle->add_option("--config", config_path, "experiment config file")->required();

  auto* run = app.add_subcommand("run", "Simulate one seeded trajectory");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--algo", algo, "known|bandit|finite|monotone|naive|baseline|threshold");
  run->add_option("--T", T, "horizon");
  run->add_option("--seed", seed, "replica seed");
  run->add_option("--emit-decisions", decisions_path, "write the decision map CSV here");

  auto* sweep = app.add_subcommand("sweep", "Run the configured Monte Carlo grid");
  sweep->add_option("--config", config_path, "experiment config file")->required();
  sweep->add_option("--out", out_dir, "output directory for runs.csv / summary.csv");
  sweep->add_option("--threads", threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle->parsed()) return cmd_oracle(config_path);
    if (run->parsed()) return cmd_run(config_path, algo, T, seed, decisions_path);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, threads);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
