#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "otp/graph.hpp"

namespace otp {

/// A targeting problem: the regular graph, the nodes the -1 agent is linked
/// to, the nodes the +1 agent is already linked to, and the +1 budget.
///
/// Invariants (checked on construction): the graph is connected, the minus
/// set is nonempty, all ids are in range, and 0 <= budget <= N - |plus_base|.
class Instance {
 public:
  Instance(Graph graph, NodeSet minus_set, NodeSet plus_base = {}, int budget = 1);

  const Graph& graph() const noexcept { return graph_; }
  const NodeSet& minus_set() const noexcept { return minus_; }
  const NodeSet& plus_base() const noexcept { return plus_base_; }
  int budget() const noexcept { return budget_; }
  int node_count() const noexcept { return graph_.node_count(); }

  /// Same graph and attachments with a different budget.
  Instance with_budget(int budget) const;

 private:
  Graph graph_;
  NodeSet minus_;
  NodeSet plus_base_;
  int budget_;
};

struct EquilibriumProfile {
  Eigen::VectorXd opinions;
  double objective = 0.0;
  NodeSet target_set;
};

/// Row i of the system reads d_i x_i - sum_{j ~ i} x_j = s_i, where d_i counts
/// regular neighbors plus strategic links and s_i = [i linked to +] - [i linked
/// to -]. Strategic links of the +1 agent are plus_base united with `targets`.
struct EquilibriumSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  int max_degree = 0;
};

EquilibriumSystem assemble_system(const Instance& inst, const NodeSet& targets);

/// Residual bound accepted from any solve: 1e-10 * max(1, d_max), infinity norm.
double residual_tolerance(const EquilibriumSystem& sys);

/// Steady-state opinions when the +1 agent additionally links to `targets`
/// (which must avoid plus_base). Uses a dense Cholesky factorization for small
/// or dense systems, sparse LDLT up to 2000 nodes and Jacobi-preconditioned
/// conjugate gradient beyond. Throws SolverError when the residual check fails.
EquilibriumProfile solve_equilibrium(const Instance& inst, const NodeSet& targets);

/// Mean steady-state opinion, the quantity the +1 agent maximizes.
double objective(const Instance& inst, const NodeSet& targets);

/// F(targets + {v}) - F(targets), computed as two independent solves.
double marginal_gain(const Instance& inst, const NodeSet& targets, Node v);

/// Re-derives the opinions as node voltages of the resistor network obtained
/// by adding the two agents as fixed +1/-1 potentials with unit conductances,
/// solved by sparse LU with Dirichlet rows. True iff every voltage matches the
/// profile within 1e-8.
bool verify_electrical(const Instance& inst, const NodeSet& targets,
                       const EquilibriumProfile& profile);

/// Node voltages from the electrical formulation (regular nodes only).
Eigen::VectorXd electrical_voltages(const Instance& inst, const NodeSet& targets);

/// Objective after adding a single target to a committed base set, in O(1)
/// per query.
///
/// Holds the dense inverse G of the base system A. Adding v changes A by
/// e_v e_v^T and the right-hand side by e_v, so with x = G b and y = G 1,
///
///   F(base + v) = (sum(x) + y_v (1 - x_v) / (1 + G_vv)) / N.
///
/// `add` applies the matching Sherman-Morrison update in O(N^2). Setup is
/// O(N^3), so this is meant for repeated single-target queries.
class IncrementalObjective {
 public:
  explicit IncrementalObjective(const Instance& inst, const NodeSet& base = {});

  double value() const noexcept { return sum_x_ / n_; }
  /// F(base + v); equals value() when v is already linked to +1.
  double value_with(Node v) const;
  double gain(Node v) const { return value_with(v) - value(); }
  void add(Node v);

  const NodeSet& base() const noexcept { return base_; }
  const Eigen::VectorXd& opinions() const noexcept { return x_; }

 private:
  bool linked_plus(Node v) const { return linked_plus_[v] != 0; }

  double n_;
  Eigen::MatrixXd inverse_;
  Eigen::VectorXd x_;
  Eigen::VectorXd y_;
  double sum_x_ = 0.0;
  NodeSet base_;
  std::vector<char> linked_plus_;
};

}  // namespace otp
