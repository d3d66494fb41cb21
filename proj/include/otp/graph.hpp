#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace otp {

using Node = int;

/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<Node>;

/// Sorts and removes duplicates in place, returning the result.
NodeSet make_node_set(std::vector<Node> nodes);

bool contains(const NodeSet& set, Node v);

struct Edge {
  Node u;
  Node v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected graph with unit edge weights and dense 0-based ids.
///
/// Edges are stored canonically (u < v, sorted). Adjacency is kept in CSR form
/// with each neighbor list sorted ascending.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over `node_count` nodes. Reversed and repeated pairs
  /// collapse to one edge. Throws InvalidArgument on a self-loop or an id
  /// outside [0, node_count).
  Graph(int node_count, std::span<const Edge> edges);

  int node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Node> neighbors(Node v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

  int degree(Node v) const noexcept { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }

  bool has_edge(Node u, Node v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Node> targets_;
};

// ---------------------------------------------------------------------------
// Generators. All randomized generators are pure functions of their arguments.

/// G(n, p): every unordered pair is included independently with probability p.
Graph generate_erdos_renyi(int n, double p, std::uint64_t seed);
Graph generate_complete(int n);
Graph generate_line(int n);
/// Star with node 0 as the center and nodes 1..leaves as leaves.
Graph generate_star(int leaves);

/// Galton-Watson tree with Poisson(lambda) offspring, grown breadth first
/// from node 0. Growth halts as soon as `max_nodes` nodes exist, possibly in
/// the middle of a generation. Throws DegenerateTree when fewer than
/// `min_nodes` nodes result.
Graph generate_poisson_tree(double lambda, int max_nodes, std::uint64_t seed, int min_nodes = 1);

// ---------------------------------------------------------------------------
// Edge-list ingestion.

struct EdgeListStats {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

/// Reads whitespace separated "u v" pairs, one per line. Lines starting with
/// '#' and blank lines are skipped; LF and CRLF endings are accepted. The node
/// count is 1 + the largest id seen.
Graph load_edge_list(const std::filesystem::path& path, EdgeListStats* stats = nullptr);
Graph read_edge_list(std::istream& in, EdgeListStats* stats = nullptr);

void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Queries.

bool is_connected(const Graph& g);
std::vector<int> degrees(const Graph& g);
bool is_tree(const Graph& g);

/// A tree rooted at a chosen node: parents, depths and subtree sizes.
class TreeView {
 public:
  /// Throws NotATree when `g` is not a tree.
  TreeView(const Graph& g, Node root);

  Node root() const noexcept { return root_; }
  int node_count() const noexcept { return static_cast<int>(parent_.size()); }

  /// The root maps to itself.
  Node parent(Node v) const { return parent_[v]; }
  int depth(Node v) const { return depth_[v]; }
  int subtree_size(Node v) const { return subtree_size_[v]; }

  /// Children of `v` in the rooted view, ascending.
  std::span<const Node> children(Node v) const {
    return {children_.data() + child_offsets_[v], children_.data() + child_offsets_[v + 1]};
  }

  std::span<const Node> bfs_order() const noexcept { return order_; }

 private:
  Node root_;
  std::vector<Node> parent_;
  std::vector<int> depth_;
  std::vector<int> subtree_size_;
  std::vector<std::size_t> child_offsets_;
  std::vector<Node> children_;
  std::vector<Node> order_;
};

inline TreeView tree_view(const Graph& g, Node root) { return TreeView(g, root); }

/// Unique simple path from u to v, both endpoints included.
std::vector<Node> path_between(const TreeView& t, Node u, Node v);

/// Children of k in the rooted view, ascending.
std::vector<Node> offspring(const TreeView& t, Node k);

}  // namespace otp
