#include "timealloc/algo_monotone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace timealloc {

double monotone_error_term(const MonotoneParams& p, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("monotone_error_term: n must be >= 2");
  const double nd = static_cast<double>(n);
  const double spread = p.D - p.E;
  const double front =
      std::sqrt(p.sigma * p.sigma + spread * spread / 4.0) +
      spread * (p.lambda * p.C + 2.0) / std::sqrt(2.0);
  return front * std::sqrt(std::log(2.0 * (p.S + 1.0) / p.delta) / (nd - 1.0)) +
         p.lambda * spread / nd;
}

MonotonePolicy::MonotonePolicy(const MonotoneParams& params) : p_(params) {
  if (!(p_.delta > 0 && p_.delta <= 1)) throw std::invalid_argument("monotone policy: delta in (0, 1]");
}

void MonotonePolicy::observe(double x, bool accepted, double realized_reward) {
  if (!(x > 0 && x <= p_.C)) throw std::domain_error("monotone policy: duration outside (0, C]");
  ++n_;
  const double y = accepted ? realized_reward : 0.0;
  if (x >= s_) {
    const auto pos = std::upper_bound(durations_.begin(), durations_.end(), x);
    const auto idx = static_cast<std::size_t>(pos - durations_.begin());
    durations_.insert(pos, x);
    rewards_.insert(rewards_.begin() + static_cast<std::ptrdiff_t>(idx), y);
  } else {
    folded_count_ += 1;
    folded_duration_ += x;
    folded_reward_ += y;
  }
  update_threshold();
}

double MonotonePolicy::p_value(double s) const {
  if (n_ == 0) throw std::logic_error("monotone policy: no observations yet");
  if (s < s_ || s > p_.C) throw std::domain_error("monotone policy: s outside [s_n, C]");
  double sum_x = 0;
  double sum_y = 0;
  for (std::size_t i = durations_.size(); i-- > 0;) {
    if (durations_[i] < s) break;
    sum_x += durations_[i];
    sum_y += rewards_[i];
  }
  return p_.lambda * sum_y / (static_cast<double>(n_) + p_.lambda * sum_x);
}

void MonotonePolicy::update_threshold() {
  if (n_ < 2) return;  // no error estimate at the first stage; keep s
  const std::size_t k = durations_.size();
  const double nd = static_cast<double>(n_);

  // Candidate thresholds: s_ itself plus every retained breakpoint, with
  // suffix sums over {X_i >= candidate}. Built in one descending pass.
  std::vector<double> cand(k + 1);
  std::vector<double> suffix_x(k + 1);
  std::vector<double> suffix_y(k + 1);
  cand[0] = s_;
  for (std::size_t i = 0; i < k; ++i) cand[i + 1] = durations_[i];
  double sx = 0;
  double sy = 0;
  for (std::size_t i = k; i-- > 0;) {
    sx += durations_[i];
    sy += rewards_[i];
    suffix_x[i + 1] = sx;
    suffix_y[i + 1] = sy;
  }
  suffix_x[0] = sx;
  suffix_y[0] = sy;

  auto p_of = [&](std::size_t idx) {
    return p_.lambda * suffix_y[idx] / (nd + p_.lambda * suffix_x[idx]);
  };

  // argmax of p_n over candidates, ties toward the smallest threshold
  std::size_t best = 0;
  double best_p = p_of(0);
  for (std::size_t i = 1; i <= k; ++i) {
    const double v = p_of(i);
    if (v > best_p) {
      best_p = v;
      best = i;
    }
  }

  const double zeta = p_.zeta_scale * monotone_error_term(p_, n_);
  double next = cand[best];  // the argmax is always potentially optimal
  for (std::size_t i = 0; i <= k; ++i) {
    const double weight = 1.0 / p_.lambda + suffix_x[i] / nd;
    if ((p_of(i) - best_p) * weight + 2.0 * zeta >= 0) {
      next = cand[i];
      break;  // candidates are sorted ascending; first hit is the minimum
    }
  }

  if (next > s_) {
    s_ = next;
    // Fold retained proposals that fell below the new threshold.
    std::size_t drop = 0;
    while (drop < durations_.size() && durations_[drop] < s_) {
      folded_count_ += 1;
      folded_duration_ += durations_[drop];
      folded_reward_ += rewards_[drop];
      ++drop;
    }
    if (drop > 0) {
      durations_.erase(durations_.begin(), durations_.begin() + static_cast<std::ptrdiff_t>(drop));
      rewards_.erase(rewards_.begin(), rewards_.begin() + static_cast<std::ptrdiff_t>(drop));
    }
  }
}

}  // namespace timealloc
