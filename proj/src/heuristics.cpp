#include "otp/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "otp/error.hpp"

namespace otp {
namespace {

constexpr int kIncrementalNodeLimit = 4096;

bool use_incremental(const Instance& inst, Backend b) {
  switch (b) {
    case Backend::direct:
      return false;
    case Backend::incremental:
      return true;
    case Backend::automatic:
      break;
  }
  const auto n = static_cast<std::size_t>(inst.node_count());
  return n <= kIncrementalNodeLimit && inst.graph().edge_count() > 2 * n;
}

/// F(base + v) for candidate v, with a committed base that can grow.
class CandidateEvaluator {
 public:
  CandidateEvaluator(const Instance& inst, Backend backend) : inst_(inst) {
    if (use_incremental(inst, backend)) incremental_.emplace(inst);
  }

  double value_with(Node v) {
    ++evaluations_;
    if (incremental_) return incremental_->value_with(v);
    if (is_base(v)) return objective(inst_, base_);
    NodeSet set = base_;
    set.insert(std::lower_bound(set.begin(), set.end(), v), v);
    return objective(inst_, set);
  }

  /// F(base) itself.
  double value() {
    ++evaluations_;
    if (incremental_) return incremental_->value();
    return objective(inst_, base_);
  }

  void add(Node v) {
    if (is_base(v)) return;
    base_.insert(std::lower_bound(base_.begin(), base_.end(), v), v);
    if (incremental_) incremental_->add(v);
  }

  bool is_base(Node v) const { return contains(base_, v); }
  bool eligible(Node v) const { return !is_base(v) && !contains(inst_.plus_base(), v); }

  const NodeSet& base() const { return base_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  const Instance& inst_;
  std::optional<IncrementalObjective> incremental_;
  NodeSet base_;
  std::size_t evaluations_ = 0;
};

void require_budget(const Instance& inst) {
  const int eligible = inst.node_count() - static_cast<int>(inst.plus_base().size());
  if (inst.budget() > eligible) throw InvalidArgument("budget exceeds eligible nodes");
}

StrategyOutcome finish(const Instance& inst, NodeSet chosen, std::size_t evaluations) {
  StrategyOutcome out;
  out.chosen_set = make_node_set(std::move(chosen));
  out.objective = objective(inst, out.chosen_set);
  out.equilibrium_evaluations = evaluations;
  return out;
}

/// Nodes sorted by descending degree, ties to the smaller id.
std::vector<Node> by_degree_desc(const Graph& g, std::vector<Node> nodes) {
  std::stable_sort(nodes.begin(), nodes.end(),
                   [&](Node a, Node b) { return g.degree(a) > g.degree(b); });
  return nodes;
}

/// Runs `rounds` greedy rounds on top of the evaluator's base.
void greedy_rounds(const Instance& inst, CandidateEvaluator& eval, int rounds,
                   StrategyOutcome& out) {
  const int n = inst.node_count();
  for (int round = 0; round < rounds; ++round) {
    Node best = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    std::size_t scanned = 0;
    for (Node v = 0; v < n; ++v) {
      if (!eval.eligible(v)) continue;
      ++scanned;
      const double f = eval.value_with(v);
      if (f > best_value + kTieTolerance) {
        best_value = f;
        best = v;
      }
    }
    if (best < 0) break;
    if (round == 0) out.visited_nodes = scanned;
    out.visited_per_step.push_back(static_cast<std::size_t>(n));
    eval.add(best);
  }
}

struct LocalSearchResult {
  Node chosen = -1;
  std::size_t visited = 0;
};

/// Best-improving-neighbor walk from `root`; candidates are valued as
/// F(base + v). Every node is evaluated at most once.
LocalSearchResult local_search(const Instance& inst, CandidateEvaluator& eval, Node root) {
  const Graph& g = inst.graph();
  std::vector<char> seen(g.node_count(), 0);
  LocalSearchResult res;

  Node current = root;
  double current_value = eval.eligible(root) ? eval.value_with(root) : eval.value();
  seen[root] = 1;

  Node best_eligible = eval.eligible(root) ? root : -1;
  double best_eligible_value = current_value;

  while (true) {
    Node next = -1;
    double next_value = current_value;
    for (Node w : g.neighbors(current)) {
      if (seen[w]) continue;
      seen[w] = 1;
      if (!eval.eligible(w)) continue;
      ++res.visited;
      const double f = eval.value_with(w);
      if (best_eligible < 0 || f > best_eligible_value + kTieTolerance) {
        best_eligible = w;
        best_eligible_value = f;
      }
      if (f > current_value + kTieTolerance && (next < 0 || f > next_value + kTieTolerance)) {
        next = w;
        next_value = f;
      }
    }
    if (next < 0) break;
    current = next;
    current_value = next_value;
  }
  res.chosen = eval.eligible(current) ? current : best_eligible;
  return res;
}

std::vector<Node> minus_by_degree(const Instance& inst) {
  std::vector<Node> roots(inst.minus_set().begin(), inst.minus_set().end());
  const Graph& g = inst.graph();
  std::stable_sort(roots.begin(), roots.end(),
                   [&](Node a, Node b) { return g.degree(a) < g.degree(b); });
  return roots;
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

}  // namespace

StrategyOutcome brute_force(const Instance& inst, const SearchOptions& opts) {
  require_budget(inst);
  const int n = inst.node_count();
  const auto k = static_cast<std::size_t>(inst.budget());
  std::vector<Node> candidates;
  for (Node v = 0; v < n; ++v)
    if (!contains(inst.plus_base(), v)) candidates.push_back(v);

  if (k == 0) return finish(inst, {}, 1);
  if (binomial(candidates.size(), k) > static_cast<double>(opts.brute_force_cap)) {
    throw InvalidArgument("brute force would enumerate more than " +
                          std::to_string(opts.brute_force_cap) + " subsets");
  }

  NodeSet best;
  double best_value = -std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  if (k == 1) {
    CandidateEvaluator eval(inst, opts.backend);
    for (Node v : candidates) {
      const double f = eval.value_with(v);
      if (f > best_value + kTieTolerance) {
        best_value = f;
        best = {v};
      }
    }
    evaluations = eval.evaluations();
  } else {
    // Lexicographic enumeration of k-combinations by index.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    NodeSet set(k);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) set[i] = candidates[idx[i]];
      const double f = objective(inst, set);
      ++evaluations;
      if (f > best_value + kTieTolerance) {
        best_value = f;
        best = set;
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == candidates.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  StrategyOutcome out = finish(inst, std::move(best), evaluations);
  out.visited_nodes = candidates.size();
  return out;
}

StrategyOutcome degree_heuristic(const Instance& inst) {
  require_budget(inst);
  std::vector<Node> eligible;
  for (Node v = 0; v < inst.node_count(); ++v)
    if (!contains(inst.plus_base(), v)) eligible.push_back(v);
  eligible = by_degree_desc(inst.graph(), std::move(eligible));
  eligible.resize(static_cast<std::size_t>(inst.budget()));
  StrategyOutcome out = finish(inst, std::move(eligible), 1);
  out.visited_per_step.assign(static_cast<std::size_t>(inst.budget()), 0);
  return out;
}

StrategyOutcome greedy(const Instance& inst, const SearchOptions& opts) {
  require_budget(inst);
  if (inst.budget() == 0) return finish(inst, {}, 1);
  CandidateEvaluator eval(inst, opts.backend);
  StrategyOutcome progress;
  greedy_rounds(inst, eval, inst.budget(), progress);
  StrategyOutcome out = finish(inst, eval.base(), eval.evaluations());
  out.visited_nodes = progress.visited_nodes;
  out.visited_per_step = std::move(progress.visited_per_step);
  return out;
}

StrategyOutcome blocking(const Instance& inst, const SearchOptions& opts) {
  require_budget(inst);
  NodeSet minus_only, plus_only;
  std::set_difference(inst.minus_set().begin(), inst.minus_set().end(), inst.plus_base().begin(),
                      inst.plus_base().end(), std::back_inserter(minus_only));
  std::set_difference(inst.plus_base().begin(), inst.plus_base().end(), inst.minus_set().begin(),
                      inst.minus_set().end(), std::back_inserter(plus_only));
  const int k = inst.budget();
  const int threshold = static_cast<int>(minus_only.size()) - static_cast<int>(plus_only.size());
  if (k <= threshold) return greedy(inst, opts);

  std::vector<Node> blocked(minus_only.begin(), minus_only.end());
  if (static_cast<int>(blocked.size()) > k) {
    blocked = by_degree_desc(inst.graph(), std::move(blocked));
    blocked.resize(static_cast<std::size_t>(k));
  }
  const int remaining = k - static_cast<int>(blocked.size());
  if (remaining == 0) {
    StrategyOutcome out = finish(inst, blocked, 1);
    out.visited_per_step.assign(static_cast<std::size_t>(k), 0);
    return out;
  }

  CandidateEvaluator eval(inst, opts.backend);
  for (Node v : blocked) eval.add(v);
  StrategyOutcome progress;
  progress.visited_per_step.assign(blocked.size(), 0);
  greedy_rounds(inst, eval, remaining, progress);
  StrategyOutcome out = finish(inst, eval.base(), eval.evaluations());
  out.visited_nodes = progress.visited_nodes;
  out.visited_per_step = std::move(progress.visited_per_step);
  return out;
}

StrategyOutcome tgsta(const Instance& inst, const SearchOptions& opts) {
  if (inst.minus_set().size() != 1 || !inst.plus_base().empty() || inst.budget() != 1) {
    throw InvalidArgument("TGSTA needs one - link, no + links and budget 1");
  }
  const TreeView tree(inst.graph(), inst.minus_set().front());
  CandidateEvaluator eval(inst, opts.backend);

  Node current = tree.root();
  double current_value = eval.value_with(current);
  std::size_t visited = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    for (Node child : tree.children(current)) {
      ++visited;
      const double f = eval.value_with(child);
      if (f > current_value + kTieTolerance) {
        current = child;
        current_value = f;
        moved = true;
        break;
      }
    }
  }
  StrategyOutcome out = finish(inst, {current}, eval.evaluations());
  out.visited_nodes = visited;
  return out;
}

StrategyOutcome tree_like_sta(const Instance& inst, Node root, const SearchOptions& opts) {
  if (inst.budget() != 1) throw InvalidArgument("single targeting needs budget 1");
  if (root < 0 || root >= inst.node_count()) throw InvalidArgument("root out of range");
  CandidateEvaluator eval(inst, opts.backend);
  const LocalSearchResult res = local_search(inst, eval, root);
  NodeSet chosen;
  if (res.chosen >= 0) chosen.push_back(res.chosen);
  StrategyOutcome out = finish(inst, std::move(chosen), eval.evaluations());
  out.visited_nodes = res.visited;
  return out;
}

StrategyOutcome tree_like_sta_multi_minus(const Instance& inst, const SearchOptions& opts) {
  return tree_like_sta(inst, minus_by_degree(inst).front(), opts);
}

StrategyOutcome tree_like_otp(const Instance& inst, const SearchOptions& opts) {
  require_budget(inst);
  if (inst.budget() == 0) return finish(inst, {}, 1);
  const std::vector<Node> roots = minus_by_degree(inst);
  CandidateEvaluator eval(inst, opts.backend);
  std::vector<std::size_t> per_step;
  std::size_t visited = 0;
  for (int step = 0; step < inst.budget(); ++step) {
    const Node root = roots[static_cast<std::size_t>(step) % roots.size()];
    const LocalSearchResult res = local_search(inst, eval, root);
    per_step.push_back(res.visited);
    visited += res.visited;
    if (res.chosen >= 0) eval.add(res.chosen);
  }
  StrategyOutcome out = finish(inst, eval.base(), eval.evaluations());
  out.visited_nodes = visited;
  out.visited_per_step = std::move(per_step);
  return out;
}

bool success(double f_star, double f_hat) {
  if (f_star == 0.0) return std::abs(f_hat) <= 1e-9;
  return std::abs(f_star - f_hat) / std::abs(f_star) <= 1.0 / std::numbers::e;
}

std::vector<std::string_view> algorithm_names() {
  return {"brute", "degree", "greedy", "blocking", "tgsta", "tree-like", "tree-like-otp"};
}

StrategyOutcome run_algorithm(std::string_view name, const Instance& inst,
                              const SearchOptions& opts) {
  if (name == "brute") return brute_force(inst, opts);
  if (name == "degree") return degree_heuristic(inst);
  if (name == "greedy") return greedy(inst, opts);
  if (name == "blocking") return blocking(inst, opts);
  if (name == "tgsta") return tgsta(inst, opts);
  if (name == "tree-like") return tree_like_sta_multi_minus(inst, opts);
  if (name == "tree-like-otp") return tree_like_otp(inst, opts);
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

}  // namespace otp
