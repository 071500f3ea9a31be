#pragma once
// Known reward function, unknown duration distribution.
//
// Every proposal (accepted or not) enters the empirical curve
//   Phi_n(c) = (lambda / n) * sum_{i<=n} (r(X_i) - c X_i)_+ - c,
// whose root c_n is maintained in O(log n) by a profit tree. Task n is
// accepted iff r(X_n) >= c_n X_n (ties accept).
//
// The root estimate overshoots c* by more than
//   lambda (D - E) sqrt(ln(1/delta) / (2n))
// with probability at most delta, which licenses folding tasks outside a
// shrinking profitability window into running sums (prune_delta > 0 enables
// this; the per-step confidence is prune_delta / n^2).

#include <cstdint>
#include <functional>

#include "timealloc/policy.hpp"
#include "timealloc/profit_tree.hpp"

namespace timealloc {

double deviation_bound(std::uint64_t n, double delta, double lambda, double D, double E);

class KnownRewardPolicy final : public Policy {
 public:
  KnownRewardPolicy(std::function<double(double)> reward, double lambda, double reward_upper,
                    double reward_lower, double prune_delta = 0.0);
  KnownRewardPolicy(const RewardFn& reward, double lambda, double reward_upper,
                    double reward_lower, double prune_delta = 0.0);

  bool decide(double x) override;

  double threshold() const { return c_n_; }
  std::uint64_t proposals() const { return n_; }
  const ProfitTree& tree() const { return tree_; }

 private:
  std::function<double(double)> reward_;
  double lambda_;
  double D_;
  double E_;
  double prune_delta_;
  ProfitTree tree_;
  std::uint64_t n_ = 0;
  double c_n_ = 0;
};

}  // namespace timealloc
