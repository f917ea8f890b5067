#include "subpath/predict.hpp"

namespace subpath {
namespace {

// Position in the simulated suffix tree: the match has length `length` and
// ends on the edge into `node` (or exactly at it). node is the shallowest
// node whose depth is >= length.
struct Locus {
  std::int32_t node = MasterIndex::root();
  std::int32_t length = 0;
};

bool extend(const MasterIndex& index, Locus& at, std::int32_t key) {
  const auto& node = index.nodes()[at.node];
  if (at.length < node.depth) {
    const NodeId rep = index.esa().sa[node.lb];
    if (index.key_at(rep, at.length) != key) return false;
    ++at.length;
    return true;
  }
  const std::int32_t child = index.child_by_key(at.node, key);
  if (child < 0) return false;
  at.node = child;
  ++at.length;
  return true;
}

}  // namespace

MatchStats matching_statistics(const MasterIndex& index, const Tree& tree,
                               MatchStrategy strategy) {
  const std::size_t n = tree.size();
  MatchStats stats;
  stats.length.assign(n, 0);
  stats.locus.assign(n, MasterIndex::root());
  // First node of the input not covered by the match of each suffix, or
  // kNoNode when the whole suffix matched.
  std::vector<NodeId> resume(n, kNoNode);

  // Preorder ids: descending id visits children before parents.
  for (std::size_t k = n; k-- > 0;) {
    const auto i = static_cast<NodeId>(k);
    Locus at;
    NodeId cursor = i;
    if (strategy == MatchStrategy::kSuffixLink) {
      NodeId best = kNoNode;
      for (NodeId c : tree.children(i)) {
        if (best == kNoNode || stats.length[c] > stats.length[best]) best = c;
      }
      if (best != kNoNode && stats.length[best] > 0) {
        // suffix(i) is suffix(best) without its first label.
        ++stats.work;
        at.length = stats.length[best] - 1;
        if (at.length > 0) {
          const auto link = index.nodes()[stats.locus[best]].suffix_link;
          at.node = index.ancestor_at_depth(link, at.length);
        }
        cursor = resume[best];
      }
    }
    while (cursor != kNoNode) {
      ++stats.work;
      const std::int32_t key = index.key_of(tree.label(cursor));
      if (key < 0 || !extend(index, at, key)) break;
      cursor = tree.parent(cursor);
    }
    stats.length[i] = at.length;
    stats.locus[i] = at.node;
    resume[i] = cursor;
  }
  return stats;
}

double predict(const MasterIndex& index, const Tree& tree, MatchStrategy strategy) {
  const MatchStats stats = matching_statistics(index, tree, strategy);
  const auto nodes = index.nodes();
  const auto& w = index.weights();
  double f = 0.0;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const std::int32_t len = stats.length[i];
    if (len == 0) continue;
    const auto& u = nodes[stats.locus[i]];
    const auto& p = nodes[u.parent];
    f += p.val + (w[static_cast<std::size_t>(len)] - w[static_cast<std::size_t>(p.depth)]) * u.wv;
  }
  return index.bias() + f;
}

double predict_direct(const SupportSet& support, const Tree& tree,
                      const KernelParams& params) {
  double f = support.bias;
  for (const auto& sv : support.items) {
    f += sv.alpha * subpath_kernel(sv.tree, tree, params);
  }
  return f;
}

}  // namespace subpath
