#include "timealloc/algo_known.hpp"

#include <cmath>
#include <stdexcept>

namespace timealloc {

double deviation_bound(std::uint64_t n, double delta, double lambda, double D, double E) {
  if (n < 1) throw std::invalid_argument("deviation_bound: n must be >= 1");
  if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("deviation_bound: delta in (0, 1]");
  return lambda * (D - E) * std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

KnownRewardPolicy::KnownRewardPolicy(std::function<double(double)> reward, double lambda,
                                     double reward_upper, double reward_lower, double prune_delta)
    : reward_(std::move(reward)),
      lambda_(lambda),
      D_(reward_upper),
      E_(reward_lower),
      prune_delta_(prune_delta) {}

KnownRewardPolicy::KnownRewardPolicy(const RewardFn& reward, double lambda, double reward_upper,
                                     double reward_lower, double prune_delta)
    : KnownRewardPolicy([reward](double x) { return eval_reward(reward, x); }, lambda,
                        reward_upper, reward_lower, prune_delta) {}

bool KnownRewardPolicy::decide(double x) {
  if (!(x > 0)) throw std::domain_error("known policy: duration must be > 0");
  const double r = reward_(x);
  tree_.insert(r, x, n_);
  ++n_;
  c_n_ = tree_.root_of_phi(n_, lambda_);
  if (prune_delta_ > 0) {
    const double nd = static_cast<double>(n_);
    const double step_delta = std::min(1.0, prune_delta_ / (nd * nd));
    const double margin = deviation_bound(n_, step_delta, lambda_, D_, E_);
    if (margin > 0) tree_.prune(c_n_ - margin, c_n_ + margin);
  }
  return r >= c_n_ * x;
}

}  // namespace timealloc
