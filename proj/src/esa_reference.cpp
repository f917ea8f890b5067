// Multikey quicksort over node suffixes. Each item carries a cursor: the
// ancestor whose key is the item's character at the current sort depth. An
// exhausted suffix has cursor kNoNode and character 0.

#include <algorithm>
#include <utility>

#include "subpath/esa.hpp"

namespace subpath {
namespace {

constexpr std::size_t kInsertionThreshold = 12;

struct Item {
  NodeId node;
  NodeId cursor;
};

class MultikeySorter {
 public:
  explicit MultikeySorter(const LabeledForest& f) : f_(f) {}

  std::vector<NodeId> sort() {
    const std::size_t n = f_.size();
    items_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      items_[v] = {static_cast<NodeId>(v), static_cast<NodeId>(v)};
    }
    struct Task {
      std::size_t lo, hi;
    };
    std::vector<Task> tasks{{0, n}};
    while (!tasks.empty()) {
      auto [lo, hi] = tasks.back();
      tasks.pop_back();
      while (hi - lo > 1) {
        if (hi - lo <= kInsertionThreshold) {
          insertion_sort(lo, hi);
          break;
        }
        const std::int32_t pivot = median_key(lo, hi);
        // Dijkstra three-way partition on the current character.
        std::size_t lt = lo, i = lo, gt = hi;
        while (i < gt) {
          const std::int32_t c = ch(items_[i]);
          if (c < pivot) {
            std::swap(items_[lt++], items_[i++]);
          } else if (c > pivot) {
            std::swap(items_[i], items_[--gt]);
          } else {
            ++i;
          }
        }
        if (lt - lo > 1) tasks.push_back({lo, lt});
        if (hi - gt > 1) tasks.push_back({gt, hi});
        if (pivot == 0) {
          // Every suffix in the middle range has ended: identical strings.
          std::sort(items_.begin() + static_cast<std::ptrdiff_t>(lt),
                    items_.begin() + static_cast<std::ptrdiff_t>(gt),
                    [](const Item& a, const Item& b) { return a.node < b.node; });
          break;
        }
        for (std::size_t k = lt; k < gt; ++k) {
          items_[k].cursor = f_.parent[items_[k].cursor];
        }
        lo = lt;
        hi = gt;
      }
    }
    std::vector<NodeId> sa(n);
    for (std::size_t i = 0; i < n; ++i) sa[i] = items_[i].node;
    return sa;
  }

 private:
  std::int32_t ch(const Item& it) const {
    return it.cursor == kNoNode ? 0 : f_.key[it.cursor];
  }

  std::int32_t median_key(std::size_t lo, std::size_t hi) const {
    std::int32_t a = ch(items_[lo]);
    std::int32_t b = ch(items_[lo + (hi - lo) / 2]);
    std::int32_t c = ch(items_[hi - 1]);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return b;
  }

  // Compares the remaining suffixes from the cursors on, then node ids.
  bool less(const Item& a, const Item& b) const {
    NodeId x = a.cursor;
    NodeId y = b.cursor;
    while (x != kNoNode && y != kNoNode) {
      if (f_.key[x] != f_.key[y]) return f_.key[x] < f_.key[y];
      x = f_.parent[x];
      y = f_.parent[y];
    }
    if (x != y) return x == kNoNode;
    return a.node < b.node;
  }

  void insertion_sort(std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const Item cur = items_[i];
      std::size_t j = i;
      while (j > lo && less(cur, items_[j - 1])) {
        items_[j] = items_[j - 1];
        --j;
      }
      items_[j] = cur;
    }
  }

  const LabeledForest& f_;
  std::vector<Item> items_;
};

}  // namespace

TreeSuffixArray build_esa_reference(const LabeledForest& forest) {
  TreeSuffixArray out;
  const std::size_t n = forest.size();
  out.sa = MultikeySorter(forest).sort();
  out.lcp.assign(n, -1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.lcp[i] = naive_lcp(forest, out.sa[i], out.sa[i + 1]);
  }
  out.rsa.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.rsa[out.sa[i]] = static_cast<std::int32_t>(i);
  out.suffix_len.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.suffix_len[v] = forest.depth[v] + 1;
  return out;
}

}  // namespace subpath
