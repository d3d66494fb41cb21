#include "otp/closed_forms.hpp"

namespace otp {

double tree_path_objective(const TreeView& t, Node k) {
  if (k < 0 || k >= t.node_count()) throw InvalidArgument("tree node out of range");
  const std::vector<Node> path = path_between(t, t.root(), k);
  const auto len = static_cast<double>(path.size());
  double total = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    // Nodes hanging from path[i]: its subtree minus the subtree of the next
    // path node. The root's side holds everything except the first child's subtree.
    const int below_next = i + 1 < path.size() ? t.subtree_size(path[i + 1]) : 0;
    const int weight = t.subtree_size(path[i]) - below_next;
    const double voltage = 2.0 * static_cast<double>(i + 1) / (len + 1.0) - 1.0;
    total += weight * voltage;
  }
  return total / t.node_count();
}

}  // namespace otp
