#include "otp/equilibrium.hpp"

#include <Eigen/Cholesky>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <string>

#include "otp/error.hpp"

namespace otp {
namespace {

constexpr int kDirectSolveLimit = 2000;
constexpr int kDenseSolveLimit = 64;
constexpr double kEquivalenceTolerance = 1e-8;

void check_ids(const NodeSet& set, int n, const char* what) {
  for (Node v : set) {
    if (v < 0 || v >= n) throw InvalidArgument(std::string(what) + " contains out-of-range node");
  }
}

std::vector<char> indicator(const NodeSet& a, const NodeSet& b, int n) {
  std::vector<char> in(n, 0);
  for (Node v : a) in[v] = 1;
  for (Node v : b) in[v] = 1;
  return in;
}

void check_targets(const Instance& inst, const NodeSet& targets) {
  check_ids(targets, inst.node_count(), "target set");
  for (Node v : targets) {
    if (contains(inst.plus_base(), v)) {
      throw InvalidArgument("target " + std::to_string(v) + " is already linked to the + agent");
    }
  }
}

Eigen::VectorXd solve_system(const EquilibriumSystem& sys, int n) {
  const auto nnz = static_cast<double>(sys.matrix.nonZeros());
  if (n <= kDenseSolveLimit || (n <= kDirectSolveLimit && nnz * 4.0 >= double(n) * n)) {
    Eigen::LLT<Eigen::MatrixXd> llt(Eigen::MatrixXd(sys.matrix));
    if (llt.info() != Eigen::Success) throw SolverError("dense Cholesky factorization failed");
    return llt.solve(sys.rhs);
  }
  if (n <= kDirectSolveLimit) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.matrix);
    if (ldlt.info() != Eigen::Success) throw SolverError("sparse LDLT factorization failed");
    return ldlt.solve(sys.rhs);
  }
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-10);
  cg.setMaxIterations(50 * n);
  cg.compute(sys.matrix);
  Eigen::VectorXd x = cg.solve(sys.rhs);
  if (cg.info() != Eigen::Success) {
    throw SolverError("conjugate gradient did not converge in " + std::to_string(cg.iterations()) +
                      " iterations (error " + std::to_string(cg.error()) + ")");
  }
  return x;
}

}  // namespace

Instance::Instance(Graph graph, NodeSet minus_set, NodeSet plus_base, int budget)
    : graph_(std::move(graph)),
      minus_(make_node_set(std::move(minus_set))),
      plus_base_(make_node_set(std::move(plus_base))),
      budget_(budget) {
  const int n = graph_.node_count();
  if (n < 1) throw InvalidArgument("instance needs at least one regular node");
  if (minus_.empty()) throw InvalidArgument("the - agent must be linked to at least one node");
  check_ids(minus_, n, "minus set");
  check_ids(plus_base_, n, "plus base");
  if (!is_connected(graph_)) throw InvalidArgument("regular graph must be connected");
  const int free_nodes = n - static_cast<int>(plus_base_.size());
  if (budget_ < 0 || budget_ > free_nodes) {
    throw InvalidArgument("budget " + std::to_string(budget_) + " outside [0, " +
                          std::to_string(free_nodes) + "]");
  }
}

Instance Instance::with_budget(int budget) const { return Instance(graph_, minus_, plus_base_, budget); }

EquilibriumSystem assemble_system(const Instance& inst, const NodeSet& targets) {
  const Graph& g = inst.graph();
  const int n = g.node_count();
  const auto plus = indicator(inst.plus_base(), targets, n);
  const auto minus = indicator(inst.minus_set(), {}, n);

  EquilibriumSystem sys;
  sys.rhs = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) + 2 * g.edge_count());
  for (Node i = 0; i < n; ++i) {
    const int d = g.degree(i) + minus[i] + plus[i];
    sys.max_degree = std::max(sys.max_degree, d);
    trips.emplace_back(i, i, static_cast<double>(d));
    sys.rhs[i] = static_cast<double>(plus[i]) - static_cast<double>(minus[i]);
    for (Node j : g.neighbors(i)) trips.emplace_back(i, j, -1.0);
  }
  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(trips.begin(), trips.end());
  return sys;
}

double residual_tolerance(const EquilibriumSystem& sys) {
  return 1e-10 * std::max(1.0, static_cast<double>(sys.max_degree));
}

EquilibriumProfile solve_equilibrium(const Instance& inst, const NodeSet& targets) {
  NodeSet set = make_node_set(targets);
  check_targets(inst, set);
  const int n = inst.node_count();
  const EquilibriumSystem sys = assemble_system(inst, set);

  EquilibriumProfile out;
  out.opinions = solve_system(sys, n);
  const double residual = (sys.matrix * out.opinions - sys.rhs).lpNorm<Eigen::Infinity>();
  if (!(residual <= residual_tolerance(sys))) {
    throw SolverError("equilibrium residual " + std::to_string(residual) + " exceeds tolerance");
  }
  out.objective = out.opinions.sum() / n;
  out.target_set = std::move(set);
  return out;
}

double objective(const Instance& inst, const NodeSet& targets) {
  return solve_equilibrium(inst, targets).objective;
}

double marginal_gain(const Instance& inst, const NodeSet& targets, Node v) {
  NodeSet set = make_node_set(targets);
  if (contains(set, v) || contains(inst.plus_base(), v)) {
    throw InvalidArgument("marginal gain requested for an already targeted node");
  }
  const double before = objective(inst, set);
  set.push_back(v);
  return objective(inst, set) - before;
}

Eigen::VectorXd electrical_voltages(const Instance& inst, const NodeSet& targets) {
  const Graph& g = inst.graph();
  const int n = g.node_count();
  const int plus_source = n;
  const int minus_source = n + 1;
  const auto plus = indicator(inst.plus_base(), make_node_set(targets), n);

  // Kirchhoff current law at every regular node: sum over incident unit
  // conductors of (V_i - V_j) = 0. Sources are pinned by identity rows.
  std::vector<Eigen::Triplet<double>> trips;
  auto conductor = [&](int i, int j) {
    trips.emplace_back(i, i, 1.0);
    trips.emplace_back(i, j, -1.0);
  };
  for (Node i = 0; i < n; ++i) {
    for (Node j : g.neighbors(i)) conductor(i, j);
    if (plus[i]) conductor(i, plus_source);
    if (contains(inst.minus_set(), i)) conductor(i, minus_source);
  }
  trips.emplace_back(plus_source, plus_source, 1.0);
  trips.emplace_back(minus_source, minus_source, 1.0);

  Eigen::SparseMatrix<double> kcl(n + 2, n + 2);
  kcl.setFromTriplets(trips.begin(), trips.end());
  kcl.makeCompressed();
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(n + 2);
  eta[plus_source] = 1.0;
  eta[minus_source] = -1.0;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(kcl);
  if (lu.info() != Eigen::Success) throw SolverError("electrical network LU failed");
  Eigen::VectorXd v = lu.solve(eta);
  return v.head(n);
}

bool verify_electrical(const Instance& inst, const NodeSet& targets,
                       const EquilibriumProfile& profile) {
  if (profile.opinions.size() != inst.node_count()) return false;
  Eigen::VectorXd v;
  try {
    v = electrical_voltages(inst, targets);
  } catch (const SolverError&) {
    return false;
  }
  return (v - profile.opinions).lpNorm<Eigen::Infinity>() <= kEquivalenceTolerance;
}

IncrementalObjective::IncrementalObjective(const Instance& inst, const NodeSet& base)
    : n_(static_cast<double>(inst.node_count())), base_(make_node_set(base)) {
  check_targets(inst, base_);
  const int n = inst.node_count();
  linked_plus_ = indicator(inst.plus_base(), base_, n);
  const EquilibriumSystem sys = assemble_system(inst, base_);
  Eigen::LLT<Eigen::MatrixXd> llt(Eigen::MatrixXd(sys.matrix));
  if (llt.info() != Eigen::Success) throw SolverError("dense Cholesky factorization failed");
  inverse_ = llt.solve(Eigen::MatrixXd::Identity(n, n));
  x_ = inverse_ * sys.rhs;
  y_ = inverse_.rowwise().sum();
  sum_x_ = x_.sum();
}

double IncrementalObjective::value_with(Node v) const {
  if (linked_plus(v)) return value();
  const double grow = y_[v] * (1.0 - x_[v]) / (1.0 + inverse_(v, v));
  return (sum_x_ + grow) / n_;
}

void IncrementalObjective::add(Node v) {
  if (linked_plus(v)) return;
  const Eigen::VectorXd g = inverse_.col(v);
  const double denom = 1.0 + g[v];
  x_ += g * ((1.0 - x_[v]) / denom);
  y_ -= g * (y_[v] / denom);
  inverse_.noalias() -= (g / denom) * g.transpose();
  sum_x_ = x_.sum();
  linked_plus_[v] = 1;
  base_.insert(std::lower_bound(base_.begin(), base_.end(), v), v);
}

}  // namespace otp
