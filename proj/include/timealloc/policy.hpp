#pragma once
// Decision policies driven by the simulation loop: decide(x) is called for
// every proposed task, then observe() reports what happened. Policies never
// consume environment variates; given the same proposal stream they are
// deterministic.

#include "timealloc/env.hpp"
#include "timealloc/oracle.hpp"

namespace timealloc {

class Policy {
 public:
  virtual ~Policy() = default;
  virtual bool decide(double duration) = 0;
  // realized_reward is the observed reward when accepted, 0 otherwise.
  virtual void observe(double duration, bool accepted, double realized_reward) {
    (void)duration;
    (void)accepted;
    (void)realized_reward;
  }
};

class AcceptAllPolicy final : public Policy {
 public:
  bool decide(double) override { return true; }
};

class RejectAllPolicy final : public Policy {
 public:
  bool decide(double) override { return false; }
};

// Accepts exactly the tasks with duration >= s.
class ThresholdPolicy final : public Policy {
 public:
  explicit ThresholdPolicy(double threshold) : threshold_(threshold) {}
  bool decide(double x) override { return x >= threshold_; }

 private:
  double threshold_;
};

// The stationary benchmark: accept iff r(x) >= c* x.
class BaselineOraclePolicy final : public Policy {
 public:
  BaselineOraclePolicy(RewardFn reward, double c_star)
      : reward_(std::move(reward)), c_star_(c_star) {}
  bool decide(double x) override {
    return baseline_decision(c_star_, x, eval_reward(reward_, x));
  }

 private:
  RewardFn reward_;
  double c_star_;
};

}  // namespace timealloc
