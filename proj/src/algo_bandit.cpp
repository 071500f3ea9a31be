#include "timealloc/algo_bandit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace timealloc {

int regressogram_bins(double C, double L, double beta, double lambda, double T) {
  if (!(C > 0 && L > 0 && beta > 0 && beta <= 1 && lambda > 0 && T > 0))
    throw std::invalid_argument("regressogram_bins: bad parameters");
  const double m = C * std::pow(L, 2.0 / (2.0 * beta + 1.0)) *
                   std::pow(lambda * T + 1.0, 1.0 / (2.0 * beta + 1.0));
  return std::max(1, static_cast<int>(std::ceil(m)));
}

double regressogram_eta(const BanditParams& p, int bins, std::uint64_t accepted_in_bin) {
  const double h = p.C / bins;
  const double hb = std::pow(h, p.holder_beta);
  const double spread = std::sqrt(p.sigma * p.sigma + p.holder_L * p.holder_L * hb * hb / 4.0);
  const double nb = static_cast<double>(accepted_in_bin);
  return spread * std::sqrt(std::log(bins / p.delta) / (2.0 * nb)) + p.holder_L * hb;
}

double regressogram_xi(const BanditParams& p, int bins, std::uint64_t n) {
  const double h = p.C / bins;
  const double nd = static_cast<double>(n);
  const double dev = 2.0 * p.lambda *
                     std::sqrt(p.sigma * p.sigma + (p.D - p.E) * (p.D - p.E) / 4.0) *
                     std::sqrt(std::log(1.0 / p.delta) / nd);
  const double regression = p.kappa * p.lambda * std::max(p.sigma, (p.D - p.E) / 2.0) *
                            std::sqrt((std::log(nd) + 1.0) / (h * nd));
  double bias = 0;
  if (!p.drop_bias_terms) {
    bias = std::sqrt(8.0) * p.lambda * p.holder_L * std::pow(h, p.holder_beta) /
               std::pow(2.0, p.holder_beta) +
           p.lambda * p.lambda * p.D * h;
  }
  return dev + regression + bias;
}

double finite_eta(const BanditParams& p, int support_size, std::uint64_t accepted_at_point) {
  return p.sigma *
         std::sqrt(std::log(support_size / p.delta) / (2.0 * static_cast<double>(accepted_at_point)));
}

double finite_xi(const BanditParams& p, int support_size, std::uint64_t n) {
  const double nd = static_cast<double>(n);
  const double K = static_cast<double>(support_size);
  return 2.0 * p.lambda * std::sqrt(p.sigma * p.sigma + (p.D - p.E) * (p.D - p.E) / 4.0) *
             std::sqrt(std::log(1.0 / p.delta) / nd) +
         p.lambda * p.sigma * std::sqrt(K / (2.0 * nd)) +
         8.0 * p.lambda * K * (p.D - p.E) / nd;
}

BanditPolicy BanditPolicy::regressogram(const BanditParams& params, int bins) {
  if (bins < 1) throw std::invalid_argument("bandit policy: need at least one bin");
  std::vector<double> reps(bins);
  const double h = params.C / bins;
  for (int j = 0; j < bins; ++j) reps[j] = j * h;
  return BanditPolicy(Mode::kRegressogram, params, std::move(reps));
}

BanditPolicy BanditPolicy::finite_support(const BanditParams& params, std::vector<double> support) {
  if (support.empty()) throw std::invalid_argument("bandit policy: empty support");
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!(support[i] > 0)) throw std::invalid_argument("bandit policy: support must be positive");
    if (i > 0 && !(support[i] > support[i - 1]))
      throw std::invalid_argument("bandit policy: support must be strictly increasing");
  }
  return BanditPolicy(Mode::kFiniteSupport, params, std::move(support));
}

BanditPolicy::BanditPolicy(Mode mode, const BanditParams& params, std::vector<double> reps)
    : mode_(mode), p_(params), reps_(std::move(reps)), bins_(reps_.size()) {
  if (!(p_.delta > 0 && p_.delta <= 1)) throw std::invalid_argument("bandit policy: delta in (0, 1]");
}

int BanditPolicy::bin_of(double x) const {
  if (mode_ == Mode::kRegressogram) {
    if (!(x > 0 && x <= p_.C)) throw std::domain_error("bandit policy: duration outside (0, C]");
    const double h = p_.C / static_cast<double>(reps_.size());
    auto j = static_cast<long>(x / h);
    if (j >= static_cast<long>(reps_.size())) j = static_cast<long>(reps_.size()) - 1;
    return static_cast<int>(j);
  }
  // Finite support: exact match (support points come from configuration).
  const auto it = std::lower_bound(reps_.begin(), reps_.end(), x);
  if (it == reps_.end() || *it != x)
    throw std::domain_error("bandit policy: duration not in the configured support");
  return static_cast<int>(it - reps_.begin());
}

double BanditPolicy::raw_eta(std::uint64_t accepted_in_bin) const {
  return mode_ == Mode::kRegressogram
             ? regressogram_eta(p_, bin_count(), accepted_in_bin)
             : finite_eta(p_, bin_count(), accepted_in_bin);
}

double BanditPolicy::raw_xi(std::uint64_t n) const {
  return mode_ == Mode::kRegressogram ? regressogram_xi(p_, bin_count(), n)
                                      : finite_xi(p_, bin_count(), n);
}

std::optional<double> BanditPolicy::upper_reward(double x) const {
  const auto& b = bins_[static_cast<std::size_t>(bin_of(x))];
  if (b.accepted == 0) return std::nullopt;
  const double r_hat = b.reward_sum / static_cast<double>(b.accepted);
  return r_hat + p_.eta_scale * raw_eta(b.accepted);
}

bool BanditPolicy::decide(double x) {
  const int j = bin_of(x);
  last_bin_ = j;
  pending_ = true;
  const auto ub = upper_reward(x);
  if (!ub) return true;
  return *ub >= c_hat_minus_ * reps_[static_cast<std::size_t>(j)];
}

void BanditPolicy::observe(double x, bool accepted, double realized_reward) {
  const int j = bin_of(x);
  if (!pending_ || j != last_bin_)
    throw std::logic_error("bandit policy: observation does not match the last decision");
  pending_ = false;
  auto& b = bins_[static_cast<std::size_t>(j)];
  if (accepted) {
    b.accepted += 1;
    b.reward_sum += realized_reward;
  } else {
    b.eliminated = true;  // permanent: r~(B) = 0 from now on
  }
  ++n_;
  refresh_bin(j);
  recompute_threshold();
}

void BanditPolicy::refresh_bin(int j) {
  auto& b = bins_[static_cast<std::size_t>(j)];
  if (b.in_tree) {
    tree_.erase(b.tree_reward / b.tree_duration, static_cast<std::uint64_t>(j));
    b.in_tree = false;
  }
  if (b.head_contribution != 0) {
    tree_.add_head(-b.head_contribution, 0, 0);
    b.head_contribution = 0;
  }
  // Only bins with positive r~ contribute to Phi_hat on c >= 0.
  if (b.accepted == 0 || b.eliminated || !(b.reward_sum > 0)) return;
  const double rep = reps_[static_cast<std::size_t>(j)];
  const double weight_reward = b.reward_sum;  // N_B * r~(B)
  if (rep == 0) {
    b.head_contribution = weight_reward;
    tree_.add_head(weight_reward, 0, 0);
  } else {
    const double weight_duration = static_cast<double>(b.accepted) * rep;
    tree_.insert(weight_reward, weight_duration, static_cast<std::uint64_t>(j));
    b.in_tree = true;
    b.tree_reward = weight_reward;
    b.tree_duration = weight_duration;
  }
}

void BanditPolicy::recompute_threshold() {
  c_hat_ = tree_.root_of_phi(n_, p_.lambda);
  xi_ = p_.xi_scale * raw_xi(n_);
  c_hat_minus_ = std::max(0.0, c_hat_ - xi_);
}

BanditPolicy::BinView BanditPolicy::bin_view(int j) const {
  const auto& b = bins_.at(static_cast<std::size_t>(j));
  return {reps_[static_cast<std::size_t>(j)], b.accepted, b.reward_sum, b.eliminated};
}

}  // namespace timealloc
