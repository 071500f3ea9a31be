#include "timealloc/profit_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace timealloc {

struct ProfitTree::Node {
  double prof;
  std::uint64_t tie;
  double reward;
  double duration;
  std::unique_ptr<Node> left;
  std::unique_ptr<Node> right;
  int height = 1;
  std::uint64_t count = 1;
  double sum_reward;
  double sum_duration;

  Node(double p, std::uint64_t t, double r, double d)
      : prof(p), tie(t), reward(r), duration(d), sum_reward(r), sum_duration(d) {}
};

namespace {

using Node = ProfitTree::Node;
using NodePtr = std::unique_ptr<Node>;

int height_of(const NodePtr& n) { return n ? n->height : 0; }
std::uint64_t count_of(const NodePtr& n) { return n ? n->count : 0; }
double reward_of(const NodePtr& n) { return n ? n->sum_reward : 0.0; }
double duration_of(const NodePtr& n) { return n ? n->sum_duration : 0.0; }

void update(Node& n) {
  n.height = 1 + std::max(height_of(n.left), height_of(n.right));
  n.count = 1 + count_of(n.left) + count_of(n.right);
  n.sum_reward = n.reward + reward_of(n.left) + reward_of(n.right);
  n.sum_duration = n.duration + duration_of(n.left) + duration_of(n.right);
}

// key(a) < key(b) in (profitability, tiebreak) order
bool key_less(double prof_a, std::uint64_t tie_a, double prof_b, std::uint64_t tie_b) {
  if (prof_a != prof_b) return prof_a < prof_b;
  return tie_a < tie_b;
}

NodePtr rotate_right(NodePtr n) {
  NodePtr l = std::move(n->left);
  n->left = std::move(l->right);
  update(*n);
  l->right = std::move(n);
  update(*l);
  return l;
}

NodePtr rotate_left(NodePtr n) {
  NodePtr r = std::move(n->right);
  n->right = std::move(r->left);
  update(*n);
  r->left = std::move(n);
  update(*r);
  return r;
}

NodePtr rebalance(NodePtr n) {
  update(*n);
  const int bf = height_of(n->left) - height_of(n->right);
  if (bf > 1) {
    if (height_of(n->left->left) < height_of(n->left->right)) n->left = rotate_left(std::move(n->left));
    return rotate_right(std::move(n));
  }
  if (bf < -1) {
    if (height_of(n->right->right) < height_of(n->right->left)) n->right = rotate_right(std::move(n->right));
    return rotate_left(std::move(n));
  }
  return n;
}

NodePtr insert_node(NodePtr t, NodePtr fresh) {
  if (!t) return fresh;
  if (key_less(fresh->prof, fresh->tie, t->prof, t->tie)) {
    t->left = insert_node(std::move(t->left), std::move(fresh));
  } else {
    t->right = insert_node(std::move(t->right), std::move(fresh));
  }
  return rebalance(std::move(t));
}

// AVL join of l < m < r; rebalances along the taller spine.
NodePtr join(NodePtr l, NodePtr m, NodePtr r) {
  const int hl = height_of(l);
  const int hr = height_of(r);
  if (hl > hr + 1) {
    l->right = join(std::move(l->right), std::move(m), std::move(r));
    return rebalance(std::move(l));
  }
  if (hr > hl + 1) {
    r->left = join(std::move(l), std::move(m), std::move(r->left));
    return rebalance(std::move(r));
  }
  m->left = std::move(l);
  m->right = std::move(r);
  update(*m);
  return m;
}

// Splits t into (keys <= (prof, tie), keys > (prof, tie)).
std::pair<NodePtr, NodePtr> split_le(NodePtr t, double prof, std::uint64_t tie) {
  if (!t) return {nullptr, nullptr};
  NodePtr left = std::move(t->left);
  NodePtr right = std::move(t->right);
  if (key_less(prof, tie, t->prof, t->tie)) {
    auto [a, b] = split_le(std::move(left), prof, tie);
    return {std::move(a), join(std::move(b), std::move(t), std::move(right))};
  }
  auto [a, b] = split_le(std::move(right), prof, tie);
  return {join(std::move(left), std::move(t), std::move(a)), std::move(b)};
}

// Splits t into (profitability < prof, profitability >= prof).
std::pair<NodePtr, NodePtr> split_lt(NodePtr t, double prof) {
  if (!t) return {nullptr, nullptr};
  NodePtr left = std::move(t->left);
  NodePtr right = std::move(t->right);
  if (t->prof < prof) {
    auto [a, b] = split_lt(std::move(right), prof);
    return {join(std::move(left), std::move(t), std::move(a)), std::move(b)};
  }
  auto [a, b] = split_lt(std::move(left), prof);
  return {std::move(a), join(std::move(b), std::move(t), std::move(right))};
}

NodePtr pop_min(NodePtr t, NodePtr& out) {
  if (!t->left) {
    NodePtr rest = std::move(t->right);
    t->right = nullptr;
    update(*t);
    out = std::move(t);
    return rest;
  }
  t->left = pop_min(std::move(t->left), out);
  return rebalance(std::move(t));
}

NodePtr erase_node(NodePtr t, double prof, std::uint64_t tie, bool& removed) {
  if (!t) return t;
  if (prof == t->prof && tie == t->tie) {
    removed = true;
    if (!t->left) return std::move(t->right);
    if (!t->right) return std::move(t->left);
    NodePtr successor;
    NodePtr rest = pop_min(std::move(t->right), successor);
    successor->left = std::move(t->left);
    successor->right = std::move(rest);
    return rebalance(std::move(successor));
  }
  if (key_less(prof, tie, t->prof, t->tie)) {
    t->left = erase_node(std::move(t->left), prof, tie, removed);
  } else {
    t->right = erase_node(std::move(t->right), prof, tie, removed);
  }
  return rebalance(std::move(t));
}

bool check_node(const Node* n, double min_prof, std::uint64_t min_tie, bool has_min,
                double max_prof, std::uint64_t max_tie, bool has_max) {
  if (!n) return true;
  if (has_min && !key_less(min_prof, min_tie, n->prof, n->tie)) return false;
  if (has_max && !key_less(n->prof, n->tie, max_prof, max_tie)) return false;
  if (std::abs(height_of(n->left) - height_of(n->right)) > 1) return false;
  if (n->height != 1 + std::max(height_of(n->left), height_of(n->right))) return false;
  if (n->count != 1 + count_of(n->left) + count_of(n->right)) return false;
  const double er = n->reward + reward_of(n->left) + reward_of(n->right);
  const double ed = n->duration + duration_of(n->left) + duration_of(n->right);
  if (er != n->sum_reward || ed != n->sum_duration) return false;
  return check_node(n->left.get(), min_prof, min_tie, has_min, n->prof, n->tie, true) &&
         check_node(n->right.get(), n->prof, n->tie, true, max_prof, max_tie, has_max);
}

void visit(const Node* n, const std::function<void(const ProfitTree::Entry&)>& fn) {
  if (!n) return;
  visit(n->left.get(), fn);
  fn({n->prof, n->tie, n->reward, n->duration});
  visit(n->right.get(), fn);
}

}  // namespace

ProfitTree::ProfitTree() = default;
ProfitTree::~ProfitTree() = default;
ProfitTree::ProfitTree(ProfitTree&&) noexcept = default;
ProfitTree& ProfitTree::operator=(ProfitTree&&) noexcept = default;

void ProfitTree::insert(double reward, double duration, std::uint64_t tiebreak) {
  if (!(duration > 0)) throw std::domain_error("profit_tree: duration must be > 0");
  auto fresh = std::make_unique<Node>(reward / duration, tiebreak, reward, duration);
  root_ = insert_node(std::move(root_), std::move(fresh));
}

bool ProfitTree::erase(double profitability, std::uint64_t tiebreak) {
  bool removed = false;
  root_ = erase_node(std::move(root_), profitability, tiebreak, removed);
  return removed;
}

void ProfitTree::prune(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("profit_tree: prune needs lo <= hi");
  // Everything strictly above hi is folded into the head.
  auto [kept, above] = split_le(std::move(root_), hi, std::numeric_limits<std::uint64_t>::max());
  if (above) {
    head_.reward += above->sum_reward;
    head_.duration += above->sum_duration;
    head_.count += above->count;
  }
  // Everything strictly below lo is discarded.
  auto [below, keep] = split_lt(std::move(kept), lo);
  below.reset();
  root_ = std::move(keep);
}

void ProfitTree::add_head(double reward, double duration, std::int64_t count) {
  head_.reward += reward;
  head_.duration += duration;
  if (count < 0 && head_.count < static_cast<std::uint64_t>(-count))
    throw std::invalid_argument("profit_tree: head count would go negative");
  head_.count = static_cast<std::uint64_t>(static_cast<std::int64_t>(head_.count) + count);
}

double ProfitTree::root_of_phi(std::uint64_t n, double lambda) const {
  if (n < 1 || n < count_of(root_) + head_.count)
    throw std::invalid_argument("profit_tree: n must cover every entry");
  const double nd = static_cast<double>(n);
  // Aggregates of entries with keys strictly above the current search point;
  // the head always qualifies.
  double above_r = head_.reward;
  double above_x = head_.duration;
  // Final linear piece if no key ever tests positive: everything contributes.
  double piece_r = head_.reward + reward_of(root_);
  double piece_x = head_.duration + duration_of(root_);
  last_visits_ = 0;
  const Node* node = root_.get();
  while (node) {
    ++last_visits_;
    const double r_above = above_r + reward_of(node->right);
    const double x_above = above_x + duration_of(node->right);
    const double value = lambda / nd * (r_above - node->prof * x_above) - node->prof;
    if (value > 0) {
      // Root lies strictly above this key: the candidate linear piece uses
      // only the entries beyond it.
      piece_r = r_above;
      piece_x = x_above;
      node = node->right.get();
    } else {
      above_r = r_above + node->reward;
      above_x = x_above + node->duration;
      node = node->left.get();
    }
  }
  return lambda * piece_r / (nd + lambda * piece_x);
}

double ProfitTree::phi_at(double c, std::uint64_t n, double lambda) const {
  if (n < 1) throw std::invalid_argument("profit_tree: n must be >= 1");
  double acc_r = head_.reward;
  double acc_x = head_.duration;
  last_visits_ = 0;
  const Node* node = root_.get();
  while (node) {
    ++last_visits_;
    if (c < node->prof) {
      acc_r += node->reward + reward_of(node->right);
      acc_x += node->duration + duration_of(node->right);
      node = node->left.get();
    } else {
      node = node->right.get();
    }
  }
  return lambda / static_cast<double>(n) * (acc_r - c * acc_x) - c;
}

std::size_t ProfitTree::size() const { return count_of(root_); }

std::size_t ProfitTree::height() const { return static_cast<std::size_t>(height_of(root_)); }

ProfitTree::Totals ProfitTree::stored_totals() const {
  return {reward_of(root_), duration_of(root_), count_of(root_)};
}

void ProfitTree::visit_in_order(const std::function<void(const Entry&)>& fn) const {
  visit(root_.get(), fn);
}

bool ProfitTree::check_invariants() const {
  if (!check_node(root_.get(), 0, 0, false, 0, 0, false)) return false;
  const auto n = count_of(root_);
  return static_cast<double>(height_of(root_)) <= 2.0 * std::log2(static_cast<double>(n) + 2.0);
}

}  // namespace timealloc
