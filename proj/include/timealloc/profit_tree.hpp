#pragma once
// Balanced search tree over (reward, duration) pairs keyed by profitability
// reward/duration (ties broken by a monotone id), augmented with subtree sums
// of rewards and durations.
//
// The empirical profitability curve
//   Phi_n(c) = (lambda / n) * sum_i (reward_i - c * duration_i)_+ - c
// is piecewise linear and strictly decreasing, so its unique root is found by
// a single root-to-leaf descent: at each node Phi_n evaluated at the node's
// key needs only the aggregates of the entries with strictly larger keys,
// and on the final linear piece the root has the closed form
//   c = lambda * sum(rewards above) / (n + lambda * sum(durations above)).
//
// A head accumulator carries mass folded out of the tree by prune(); it
// always contributes in full, which is exact as long as every folded key
// stays above any evaluation point.

#include <cstdint>
#include <functional>
#include <memory>

namespace timealloc {

class ProfitTree {
 public:
  struct Totals {
    double reward = 0;
    double duration = 0;
    std::uint64_t count = 0;
  };

  struct Entry {
    double profitability;
    std::uint64_t tiebreak;
    double reward;
    double duration;
  };

  ProfitTree();
  ~ProfitTree();
  ProfitTree(ProfitTree&&) noexcept;
  ProfitTree& operator=(ProfitTree&&) noexcept;
  ProfitTree(const ProfitTree&) = delete;
  ProfitTree& operator=(const ProfitTree&) = delete;

  // Key is reward/duration; requires duration > 0.
  void insert(double reward, double duration, std::uint64_t tiebreak);

  // Removes one entry with exactly this (profitability, tiebreak) key.
  bool erase(double profitability, std::uint64_t tiebreak);

  // Folds entries with profitability > hi into the head accumulator and
  // discards entries with profitability < lo. Root queries are unchanged as
  // long as the root stays inside [lo, hi]. Requires lo <= hi.
  void prune(double lo, double hi);

  // Adjusts the head accumulator directly (signed deltas), for mass whose key
  // is above every stored entry, e.g. entries of unbounded profitability.
  void add_head(double reward, double duration, std::int64_t count);

  // Unique root of Phi_n; n must cover every entry (n >= count + head count,
  // n >= 1). With no mass at all the root is 0 (Phi_n(c) = -c).
  double root_of_phi(std::uint64_t n, double lambda) const;

  // Phi_n evaluated at an arbitrary c >= 0 from the aggregates, O(height).
  double phi_at(double c, std::uint64_t n, double lambda) const;

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::size_t height() const;
  Totals head() const { return head_; }
  Totals stored_totals() const;

  // Nodes touched by the most recent root_of_phi / phi_at descent.
  std::size_t last_descent_visits() const { return last_visits_; }

  void visit_in_order(const std::function<void(const Entry&)>& fn) const;

  // Recursively re-derives every aggregate, the key ordering, and the
  // balance/height bound. Test support; O(n).
  bool check_invariants() const;

  struct Node;  // defined in the implementation file

 private:
  std::unique_ptr<Node> root_;
  Totals head_;
  mutable std::size_t last_visits_ = 0;
};

}  // namespace timealloc
