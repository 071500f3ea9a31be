#pragma once
// Noisy rewards, unknown reward function.
//
// Rewards are estimated by a regressogram over M equal bins of [0, C] (or one
// bin per support point in the finite-support variant), counting accepted
// tasks only. Bin B with representative x^B (its left endpoint) carries
//   r_hat(B)  = mean observed reward of accepted tasks in B,
//   r~(B)     = 0 once any task of B has been rejected, else r_hat(B),
// and the threshold estimate c_hat is the root of the binned curve
//   Phi_hat_n(c) = lambda * sum_B (N_B / n) (r~(B) - c x^B)_+ - c,
// maintained by a profit tree keyed by (r~/x^B, bin id). Bins whose
// representative is 0 contribute a constant and live in the tree head.
//
// Decisions are optimistic-vs-pessimistic: accept task x iff
//   r_hat^+(x) >= c_hat^- * x^B(x),
// where r_hat^+ adds the uncertainty width eta (unbounded while the bin is
// empty) and c_hat^- subtracts the width xi, clamped at 0. The (log n + 1)
// term of xi uses the natural logarithm. eta_scale / xi_scale multiply the
// widths (tuned in experiment configs; coverage tests run at 1).

#include <cstdint>
#include <optional>
#include <vector>

#include "timealloc/policy.hpp"
#include "timealloc/profit_tree.hpp"

namespace timealloc {

struct BanditParams {
  double lambda = 1;
  double C = 1;
  double D = 1;
  double E = 0;
  double sigma = 0;
  double delta = 0.01;
  double holder_L = 1;
  double holder_beta = 1;
  double kappa = 150;  // square root of the regression-estimate universal constant
  double eta_scale = 1;
  double xi_scale = 1;
  bool drop_bias_terms = false;
};

// Bin count M = ceil(C * L^{2/(2b+1)} * (lambda T + 1)^{1/(2b+1)}).
int regressogram_bins(double C, double L, double beta, double lambda, double T);

// Uncertainty widths (unscaled).
double regressogram_eta(const BanditParams& p, int bins, std::uint64_t accepted_in_bin);
double regressogram_xi(const BanditParams& p, int bins, std::uint64_t n);
double finite_eta(const BanditParams& p, int support_size, std::uint64_t accepted_at_point);
double finite_xi(const BanditParams& p, int support_size, std::uint64_t n);

class BanditPolicy final : public Policy {
 public:
  static BanditPolicy regressogram(const BanditParams& params, int bins);
  static BanditPolicy finite_support(const BanditParams& params, std::vector<double> support);

  bool decide(double x) override;
  void observe(double x, bool accepted, double realized_reward) override;

  // nullopt means unbounded (no accepted sample in the bin yet).
  std::optional<double> upper_reward(double x) const;
  double threshold_estimate() const { return c_hat_; }
  double threshold_lower() const { return c_hat_minus_; }
  double uncertainty() const { return xi_; }  // scaled xi at the current n
  std::uint64_t proposals() const { return n_; }

  int bin_count() const { return static_cast<int>(bins_.size()); }
  int bin_of(double x) const;

  struct BinView {
    double rep;
    std::uint64_t accepted;
    double reward_sum;
    bool eliminated;
  };
  BinView bin_view(int j) const;

 private:
  struct BinState {
    std::uint64_t accepted = 0;
    double reward_sum = 0;
    bool eliminated = false;
    bool in_tree = false;
    double tree_reward = 0;
    double tree_duration = 0;
    double head_contribution = 0;
  };

  enum class Mode { kRegressogram, kFiniteSupport };

  BanditPolicy(Mode mode, const BanditParams& params, std::vector<double> reps);

  void refresh_bin(int j);
  void recompute_threshold();
  double raw_eta(std::uint64_t accepted_in_bin) const;
  double raw_xi(std::uint64_t n) const;

  Mode mode_;
  BanditParams p_;
  std::vector<double> reps_;  // x^B per bin
  std::vector<BinState> bins_;
  ProfitTree tree_;
  std::uint64_t n_ = 0;
  double c_hat_ = 0;
  double xi_ = 0;
  double c_hat_minus_ = 0;
  int last_bin_ = -1;
  bool pending_ = false;
};

}  // namespace timealloc
