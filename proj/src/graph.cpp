#include "otp/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "otp/error.hpp"

namespace otp {

NodeSet make_node_set(std::vector<Node> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

bool contains(const NodeSet& set, Node v) { return std::binary_search(set.begin(), set.end(), v); }

Graph::Graph(int node_count, std::span<const Edge> edges) : node_count_(node_count) {
  if (node_count < 0) throw InvalidArgument("node count must be nonnegative");
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count) {
      throw InvalidArgument("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            "} has an id outside [0, " + std::to_string(node_count) + ")");
    }
    if (e.u == e.v) throw InvalidArgument("self-loop at node " + std::to_string(e.u));
    edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<std::size_t> deg(static_cast<std::size_t>(node_count) + 1, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u + 1];
    ++deg[e.v + 1];
  }
  offsets_.assign(deg.size(), 0);
  for (std::size_t i = 1; i < deg.size(); ++i) offsets_[i] = offsets_[i - 1] + deg[i];
  targets_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Canonical edge order already yields ascending lists for the smaller
  // endpoint; a final per-node sort makes every list ascending.
  for (const Edge& e : edges_) {
    targets_[cursor[e.u]++] = e.v;
    targets_[cursor[e.v]++] = e.u;
  }
  for (int v = 0; v < node_count; ++v) {
    std::sort(targets_.begin() + offsets_[v], targets_.begin() + offsets_[v + 1]);
  }
}

bool Graph::has_edge(Node u, Node v) const {
  if (u < 0 || v < 0 || u >= node_count_ || v >= node_count_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool is_connected(const Graph& g) {
  const int n = g.node_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<Node> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Node u = stack.back();
    stack.pop_back();
    for (Node w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) d[v] = g.degree(v);
  return d;
}

bool is_tree(const Graph& g) {
  return g.node_count() >= 1 && g.edge_count() == static_cast<std::size_t>(g.node_count() - 1) &&
         is_connected(g);
}

TreeView::TreeView(const Graph& g, Node root) : root_(root) {
  const int n = g.node_count();
  if (!is_tree(g)) throw NotATree();
  if (root < 0 || root >= n) throw InvalidArgument("tree root out of range");

  parent_.assign(n, -1);
  depth_.assign(n, 0);
  subtree_size_.assign(n, 1);
  order_.reserve(n);
  parent_[root] = root;
  order_.push_back(root);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    Node u = order_[head];
    for (Node w : g.neighbors(u)) {
      if (parent_[w] == -1 && w != root) {
        parent_[w] = u;
        depth_[w] = depth_[u] + 1;
        order_.push_back(w);
      }
    }
  }
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    if (*it != root) subtree_size_[parent_[*it]] += subtree_size_[*it];
  }

  child_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Node v = 0; v < n; ++v) {
    if (v != root) ++child_offsets_[parent_[v] + 1];
  }
  for (int i = 1; i <= n; ++i) child_offsets_[i] += child_offsets_[i - 1];
  children_.resize(n > 0 ? n - 1 : 0);
  std::vector<std::size_t> cursor(child_offsets_.begin(), child_offsets_.end() - 1);
  // Visiting v ascending keeps each child list ascending.
  for (Node v = 0; v < n; ++v) {
    if (v != root) children_[cursor[parent_[v]]++] = v;
  }
}

std::vector<Node> path_between(const TreeView& t, Node u, Node v) {
  std::vector<Node> head, tail;
  while (t.depth(u) > t.depth(v)) {
    head.push_back(u);
    u = t.parent(u);
  }
  while (t.depth(v) > t.depth(u)) {
    tail.push_back(v);
    v = t.parent(v);
  }
  while (u != v) {
    head.push_back(u);
    tail.push_back(v);
    u = t.parent(u);
    v = t.parent(v);
  }
  head.push_back(u);
  head.insert(head.end(), tail.rbegin(), tail.rend());
  return head;
}

std::vector<Node> offspring(const TreeView& t, Node k) {
  auto c = t.children(k);
  return {c.begin(), c.end()};
}

}  // namespace otp
