#pragma once
// Non-decreasing profitability: the optimal policy is a duration threshold
// s* with r(s*)/s* = c*, so learning reduces to locating s*.
//
// After n proposals the empirical per-time reward of the threshold-s policy is
//   p_n(s) = (lambda/n sum Y_i 1(X_i >= s)) / (1 + lambda/n sum X_i 1(X_i >= s)),
// piecewise constant with breakpoints at the observed durations. With the
// error term
//   zeta_n = (sqrt(sigma^2 + (D-E)^2/4) + (D-E)(lambda C + 2)/sqrt(2))
//              * sqrt(ln(2(S+1)/delta) / (n-1)) + lambda (D-E)/n,
// S = 2(lambda T + 1), a threshold s >= s_n stays potentially optimal while
//   (p_n(s) - p_n(s*_n)) * (1/lambda + (1/n) sum X_i 1(X_i >= s)) + 2 zeta_n >= 0,
// and the next threshold is the smallest such s. Thresholds never decrease,
// so proposals shorter than the current threshold can be folded into running
// sums: they are out of every future indicator.

#include <cstdint>
#include <vector>

#include "timealloc/policy.hpp"

namespace timealloc {

struct MonotoneParams {
  double lambda = 1;
  double C = 1;
  double D = 1;
  double E = 0;
  double sigma = 0;
  double delta = 0.01;
  double S = 1;  // high-probability proposal-count bound, 2 (lambda T + 1)
  double zeta_scale = 1;
};

// zeta_n; requires n >= 2 (the first stage has no error estimate).
double monotone_error_term(const MonotoneParams& p, std::uint64_t n);

class MonotonePolicy final : public Policy {
 public:
  explicit MonotonePolicy(const MonotoneParams& params);

  bool decide(double x) override { return x >= s_; }
  void observe(double x, bool accepted, double realized_reward) override;

  double threshold() const { return s_; }
  std::uint64_t proposals() const { return n_; }
  std::size_t retained() const { return durations_.size(); }

  // p_n(s) for s in [s_n, C]; throws if s is below the current threshold or
  // no proposal has been observed yet.
  double p_value(double s) const;

 private:
  void update_threshold();

  MonotoneParams p_;
  double s_ = 0;
  std::uint64_t n_ = 0;
  // Individually retained proposals with duration >= s_, sorted by duration;
  // rewards are Y_i for accepted tasks and 0 otherwise.
  std::vector<double> durations_;
  std::vector<double> rewards_;
  // Folded mass below the threshold (never re-enters any admissible sum).
  std::uint64_t folded_count_ = 0;
  double folded_duration_ = 0;
  double folded_reward_ = 0;
};

}  // namespace timealloc
