#include <cmath>
#include <vector>

#include "otp/error.hpp"
#include "otp/graph.hpp"
#include "otp/random.hpp"

namespace otp {
namespace {

int sample_poisson(double lambda, Rng& rng) {
  if (lambda > 60.0) {
    std::poisson_distribution<int> dist(lambda);
    return dist(rng);
  }
  // Knuth's product method.
  const double limit = std::exp(-lambda);
  int k = 0;
  double prod = uniform01(rng);
  while (prod > limit) {
    ++k;
    prod *= uniform01(rng);
  }
  return k;
}

}  // namespace

Graph generate_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Node u = 0; u < n; ++u) {
    for (Node v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) edges.push_back({u, v});
    }
  }
  return Graph(n, edges);
}

Graph generate_complete(int n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph generate_line(int n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  std::vector<Edge> edges;
  for (Node i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, edges);
}

Graph generate_star(int leaves) {
  if (leaves < 0) throw InvalidArgument("leaf count must be nonnegative");
  std::vector<Edge> edges;
  for (Node i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Graph(leaves + 1, edges);
}

Graph generate_poisson_tree(double lambda, int max_nodes, std::uint64_t seed, int min_nodes) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (max_nodes < 1) throw InvalidArgument("max_nodes must be at least 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  int count = 1;
  // Nodes are numbered in breadth-first order, so node `head` is the next parent.
  for (Node head = 0; head < count && count < max_nodes; ++head) {
    const int kids = sample_poisson(lambda, rng);
    for (int c = 0; c < kids && count < max_nodes; ++c) edges.push_back({head, count++});
  }
  if (count < min_nodes) throw DegenerateTree(static_cast<std::size_t>(count));
  return Graph(count, edges);
}

}  // namespace otp
