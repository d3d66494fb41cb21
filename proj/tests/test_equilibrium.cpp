#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "otp/equilibrium.hpp"
#include "otp/error.hpp"
#include "otp/random.hpp"

using namespace otp;

namespace {

/// K_N with p nodes linked to + only, q to - only and r to both:
/// nodes [0, p) plus, [p, p+q) minus, [p+q, p+q+r) both.
Instance complete_instance(int n, int p, int q, int r) {
  NodeSet minus, plus;
  for (int i = 0; i < p; ++i) plus.push_back(i);
  for (int i = p; i < p + q + r; ++i) minus.push_back(i);
  for (int i = p + q; i < p + q + r; ++i) plus.push_back(i);
  return Instance(generate_complete(n), minus, plus, 0);
}

Instance random_instance(std::uint64_t seed, int n, double p) {
  Rng rng(seed);
  Graph g = generate_erdos_renyi(n, p, rng());
  while (!is_connected(g)) g = generate_erdos_renyi(n, p, rng());
  NodeSet minus{static_cast<Node>(uniform_below(rng, n))};
  NodeSet base;
  if (n > 2 && uniform01(rng) < 0.5) base.push_back(static_cast<Node>(uniform_below(rng, n)));
  return Instance(std::move(g), minus, base, 0);
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(Instance(generate_line(3), {}, {}, 1), InvalidArgument);
  CHECK_THROWS_AS(Instance(generate_line(3), {3}, {}, 1), InvalidArgument);
  CHECK_THROWS_AS(Instance(generate_line(3), {0}, {}, 4), InvalidArgument);
  CHECK_THROWS_AS(Instance(generate_line(3), {0}, {1, 2}, 2), InvalidArgument);
  CHECK_THROWS_AS(Instance(Graph(2, std::vector<Edge>{}), {0}, {}, 1), InvalidArgument);
  CHECK_NOTHROW(Instance(generate_line(3), {0}, {1, 2}, 1));
}

TEST_CASE("hand-solvable equilibria") {
  SUBCASE("single node tied to both agents") {
    const Instance inst(Graph(1, std::vector<Edge>{}), {0}, {0}, 0);
    const auto prof = solve_equilibrium(inst, {});
    CHECK(prof.opinions[0] == doctest::Approx(0.0));
    CHECK(prof.objective == doctest::Approx(0.0));
  }
  SUBCASE("two-node line") {
    const Instance inst(generate_line(2), {0}, {}, 1);
    const auto prof = solve_equilibrium(inst, {1});
    CHECK(prof.opinions[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(prof.opinions[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(prof.objective) < 1e-14);
    CHECK(prof.target_set == NodeSet{1});
  }
  SUBCASE("K10 with p=2, q=1, r=2") {
    // Classes x_p, x_q, x_r share a value; the class equations give F = 0.15.
    CHECK(objective(complete_instance(10, 2, 1, 2), {}) == doctest::Approx(0.15).epsilon(1e-12));
  }
  SUBCASE("line(10) with - at node 0 and + at node 3") {
    const Instance inst(generate_line(10), {0}, {}, 1);
    CHECK(objective(inst, {3}) == doctest::Approx(0.36).epsilon(1e-12));
  }
  SUBCASE("identical attachments cancel") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Instance base = random_instance(s, 12, 0.4);
      const Instance inst(base.graph(), base.minus_set(), {}, 1);
      CHECK(std::abs(objective(inst, inst.minus_set())) < 1e-12);
    }
  }
}

TEST_CASE("targets must avoid the existing + links") {
  const Instance inst(generate_line(4), {0}, {2}, 1);
  CHECK_THROWS_AS(solve_equilibrium(inst, {2}), InvalidArgument);
  CHECK_THROWS_AS(solve_equilibrium(inst, {7}), InvalidArgument);
  CHECK_THROWS_AS(marginal_gain(inst, {1}, 1), InvalidArgument);
}

TEST_CASE("solve_equilibrium agrees with Gaussian elimination and the dynamics") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const int n = 3 + static_cast<int>(s % 30);
    const Instance inst = random_instance(100 + s, n, 0.3);
    Rng rng(s);
    NodeSet targets;
    for (Node v = 0; v < n; ++v)
      if (!contains(inst.plus_base(), v) && uniform01(rng) < 0.2) targets.push_back(v);
    const auto prof = solve_equilibrium(inst, targets);
    const auto gauss = oracle::gauss_opinions(inst, targets);
    const auto limit = oracle::degroot_limit(inst, targets);
    for (Node i = 0; i < n; ++i) {
      CHECK(std::abs(prof.opinions[i] - gauss[i]) < 1e-10);
      CHECK(std::abs(prof.opinions[i] - limit[i]) < 1e-9);
      CHECK(std::abs(prof.opinions[i]) <= 1.0 + 1e-12);
    }
    CHECK(std::abs(prof.objective - oracle::mean(gauss)) < 1e-10);
  }
}

TEST_CASE("all solver paths agree") {
  // Sparse LDLT (sparse, N <= 2000) against the dense oracle.
  {
    std::uint64_t seed = 5;
    Graph g = generate_line(1);
    while (g.node_count() < 200) g = generate_poisson_tree(2.0, 300, seed++);
    const Instance inst(std::move(g), {0}, {}, 1);
    const Node target = inst.node_count() - 1;
    CHECK(std::abs(objective(inst, {target}) - oracle::gauss_objective(inst, {target})) < 1e-10);
  }
  // Conjugate gradient above 2000 nodes, against the closed form on a line.
  {
    const int n = 2600;
    const Instance inst(generate_line(n), {0}, {}, 1);
    const int k = 71;
    const double expected = static_cast<double>(k - 1) * (n + 1 - k - 1) / (static_cast<double>(n) * (k - 1 + 2));
    const auto prof = solve_equilibrium(inst, {k - 1});
    CHECK(prof.objective == doctest::Approx(expected).epsilon(1e-9));
    CHECK(verify_electrical(inst, {k - 1}, prof));
  }
}

TEST_CASE("swapping the agents negates the objective") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Instance base = random_instance(300 + s, 6 + static_cast<int>(s % 10), 0.35);
    Rng rng(s);
    const Node t = static_cast<Node>(uniform_below(rng, base.node_count()));
    if (contains(base.plus_base(), t)) continue;
    NodeSet plus = base.plus_base();
    plus.push_back(t);
    plus = make_node_set(plus);
    const Instance forward(base.graph(), base.minus_set(), plus, 0);
    const Instance swapped(base.graph(), plus, base.minus_set(), 0);
    CHECK(objective(forward, {}) == doctest::Approx(-objective(swapped, {})).epsilon(1e-12));
  }
}

TEST_CASE("marginal gain is deterministic") {
  const Instance inst = random_instance(9, 15, 0.3);
  NodeSet targets;
  Node v = 0;
  while (contains(inst.plus_base(), v)) ++v;
  const double a = marginal_gain(inst, targets, v);
  const double b = marginal_gain(inst, targets, v);
  CHECK(a == b);
  CHECK(a == doctest::Approx(objective(inst, {v}) - objective(inst, {})).epsilon(1e-12));
}

TEST_CASE("electrical formulation") {
  SUBCASE("agrees on random instances and rejects a perturbed profile") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const Instance inst = random_instance(500 + s, 4 + static_cast<int>(s % 20), 0.3);
      NodeSet targets;
      for (Node v = 0; v < inst.node_count(); v += 3)
        if (!contains(inst.plus_base(), v)) targets.push_back(v);
      auto prof = solve_equilibrium(inst, targets);
      CHECK(verify_electrical(inst, targets, prof));
      const Eigen::VectorXd volts = electrical_voltages(inst, targets);
      CHECK((volts - prof.opinions).lpNorm<Eigen::Infinity>() < 1e-10);
      prof.opinions[static_cast<Eigen::Index>(s % inst.node_count())] += 1e-3;
      CHECK_FALSE(verify_electrical(inst, targets, prof));
    }
  }
  SUBCASE("hand examples") {
    const Instance two(generate_line(2), {0}, {}, 1);
    CHECK(verify_electrical(two, {1}, solve_equilibrium(two, {1})));
    const Instance k10 = complete_instance(10, 2, 1, 2);
    CHECK(verify_electrical(k10, {}, solve_equilibrium(k10, {})));
  }
}

TEST_CASE("incremental objective matches fresh solves") {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const Instance inst = random_instance(700 + s, 10 + static_cast<int>(s), 0.3);
    IncrementalObjective inc(inst);
    CHECK(inc.value() == doctest::Approx(objective(inst, {})).epsilon(1e-12));
    NodeSet committed;
    for (int round = 0; round < 3; ++round) {
      Node best = -1;
      for (Node v = 0; v < inst.node_count(); ++v) {
        if (contains(inst.plus_base(), v) || std::find(committed.begin(), committed.end(), v) != committed.end()) {
          CHECK(inc.value_with(v) == inc.value());
          continue;
        }
        NodeSet with = committed;
        with.push_back(v);
        CHECK(std::abs(inc.value_with(v) - oracle::gauss_objective(inst, with)) < 1e-11);
        CHECK(inc.gain(v) == doctest::Approx(inc.value_with(v) - inc.value()));
        best = v;
      }
      if (best < 0) break;
      inc.add(best);
      committed.push_back(best);
      const auto gauss = oracle::gauss_opinions(inst, committed);
      CHECK(std::abs(inc.value() - oracle::mean(gauss)) < 1e-11);
      for (Node i = 0; i < inst.node_count(); ++i) CHECK(std::abs(inc.opinions()[i] - gauss[i]) < 1e-11);
    }
  }
}
