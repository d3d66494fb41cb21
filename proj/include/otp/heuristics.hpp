#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "otp/equilibrium.hpp"

namespace otp {

struct StrategyOutcome {
  NodeSet chosen_set;
  /// F(chosen_set) from a final solve_equilibrium call.
  double objective = 0.0;
  /// Objective evaluations the search performed.
  std::size_t equilibrium_evaluations = 0;
  /// Candidate nodes whose objective was evaluated (the root's own
  /// evaluation in the tree searches is not counted).
  std::size_t visited_nodes = 0;
  /// Nodes scanned at each outer step (OTP solvers only).
  std::vector<std::size_t> visited_per_step;
};

/// How candidate objectives are computed during a search.
enum class Backend {
  automatic,    ///< incremental for dense-ish graphs up to 4096 nodes, direct otherwise
  direct,       ///< one solve_equilibrium per candidate
  incremental,  ///< IncrementalObjective rank-one queries
};

struct SearchOptions {
  Backend backend = Backend::automatic;
  /// Largest number of subsets brute_force will enumerate.
  std::size_t brute_force_cap = 2'000'000;
};

/// Two objective values closer than this are treated as equal; a candidate
/// only counts as improving when it beats the incumbent by more.
inline constexpr double kTieTolerance = 1e-11;

/// Exact maximizer over every budget-sized subset of the eligible nodes;
/// ties go to the lexicographically smallest set.
StrategyOutcome brute_force(const Instance& inst, const SearchOptions& opts = {});

/// Top-budget nodes by degree among eligible nodes, ties to the smaller id.
StrategyOutcome degree_heuristic(const Instance& inst);

/// Budget rounds of best single addition.
StrategyOutcome greedy(const Instance& inst, const SearchOptions& opts = {});

/// Blocks the opponent's exclusive targets first when the budget allows it,
/// then spends the rest greedily. Falls back to greedy otherwise.
StrategyOutcome blocking(const Instance& inst, const SearchOptions& opts = {});

/// Descent on a tree from the - agent's node: move to the first child (in
/// ascending id order) that improves the objective, stop when none does.
/// Requires a tree, one - link, no + links and budget 1.
StrategyOutcome tgsta(const Instance& inst, const SearchOptions& opts = {});

/// Local search on any graph: from `root`, evaluate every unvisited
/// neighbor and move to the best improving one until none improves. Each node
/// is evaluated at most once. Requires budget 1.
StrategyOutcome tree_like_sta(const Instance& inst, Node root, const SearchOptions& opts = {});

/// tree_like_sta rooted at the lowest-degree node linked to the - agent.
StrategyOutcome tree_like_sta_multi_minus(const Instance& inst, const SearchOptions& opts = {});

/// Greedy outer loop whose inner single-target search is tree_like_sta,
/// rooted in turn at the - agent's nodes in ascending degree order.
StrategyOutcome tree_like_otp(const Instance& inst, const SearchOptions& opts = {});

/// Relative error of F_hat against F_star at most 1/e. For F_star == 0 this is
/// |F_hat| <= 1e-9.
bool success(double f_star, double f_hat);

/// Algorithm names accepted by run_algorithm and the CLI.
std::vector<std::string_view> algorithm_names();
StrategyOutcome run_algorithm(std::string_view name, const Instance& inst,
                              const SearchOptions& opts = {});

}  // namespace otp
