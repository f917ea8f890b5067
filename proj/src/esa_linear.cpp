#include <algorithm>
#include <array>
#include <bit>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>

#include "subpath/esa_steps.hpp"

namespace subpath {
namespace esa_steps {
namespace {

template <typename T>
void prefetch(const T* p) {
  __builtin_prefetch(p);
}

// Vector whose resize leaves new elements uninitialized, for arrays that are
// written in full before they are read.
template <typename T>
struct UninitializedAllocator : std::allocator<T> {
  template <typename U>
  struct rebind {
    using other = UninitializedAllocator<U>;
  };
  template <typename U, typename... Args>
  void construct(U* p, Args&&... args) {
    ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
  }
  template <typename U>
  void construct(U* p) noexcept {
    ::new (static_cast<void*>(p)) U;
  }
};

template <typename T>
using Buffer = std::vector<T, UninitializedAllocator<T>>;

// The first three keys of a suffix and the contracted ids of the node and
// its first three ancestors (-1 for nonsample or missing nodes). Missing
// keys are 0.
struct alignas(32) Chain {
  std::array<std::int32_t, 3> key;
  std::int32_t own;
  std::array<std::int32_t, 3> up;
  std::int32_t len;
};

// Parents precede children, so each record extends its parent's.
Buffer<Chain> build_chain(const LabeledForest& f, int d) {
  constexpr std::size_t kAhead = 16;
  const std::size_t n = f.size();
  Buffer<Chain> chain(n);
  std::int32_t next_id = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (v + kAhead < n && f.parent[v + kAhead] != kNoNode) {
      prefetch(&chain[static_cast<std::size_t>(f.parent[v + kAhead])]);
    }
    const std::int32_t own = f.depth[v] % 3 != d ? next_id++ : -1;
    const NodeId p = f.parent[v];
    if (p == kNoNode) {
      chain[v] = {{f.key[v], 0, 0}, own, {-1, -1, -1}, 1};
    } else {
      const Chain& c = chain[static_cast<std::size_t>(p)];
      chain[v] = {{f.key[v], c.key[0], c.key[1]}, own, {c.own, c.up[0], c.up[1]}, c.len + 1};
    }
  }
  return chain;
}

// Stable counting sort of records by key_of(record) in [0, range).
template <typename T, typename KeyOf>
void counting_pass(Buffer<T>& in, Buffer<T>& out, std::size_t range, KeyOf key_of) {
  std::vector<std::int32_t> bucket(range + 1, 0);
  for (const T& t : in) ++bucket[static_cast<std::size_t>(key_of(t)) + 1];
  for (std::size_t k = 0; k < range; ++k) bucket[k + 1] += bucket[k];
  for (const T& t : in) out[static_cast<std::size_t>(bucket[static_cast<std::size_t>(key_of(t))]++)] = t;
  std::swap(in, out);
}

// One adjacent pair of the sample order.
struct PairEntry {
  std::int32_t lcp;
  std::int32_t next_left;
  std::int32_t next_right;
};

// Minimum lcp over a range of pairs with its leftmost and rightmost
// positions. Blocks of 32; inside a block each position keeps the bitmask of
// the minimum stack ending there (one stack keeps equal values, one drops
// them), and whole blocks are covered by sparse tables of positions.
class ExtremeArgmin {
 public:
  explicit ExtremeArgmin(Buffer<PairEntry> entries) : entry_(std::move(entries)) {
    const std::size_t n = entry_.size();
    masks_.resize(n);
    blocks_ = (n + 31) / 32;
    for (std::size_t b = 0; b < blocks_; ++b) {
      const std::size_t start = b * 32;
      const std::size_t end = std::min(n, start + 32);
      std::uint32_t keep = 0, drop = 0;
      for (std::size_t i = start; i < end; ++i) {
        const std::int32_t v = entry_[i].lcp;
        while (keep != 0 && value(start + top(keep)) > v) keep &= ~(1u << top(keep));
        while (drop != 0 && value(start + top(drop)) >= v) drop &= ~(1u << top(drop));
        keep |= 1u << (i - start);
        drop |= 1u << (i - start);
        masks_[i] = {keep, drop};
      }
    }
    levels_ = std::max(1, static_cast<int>(std::bit_width(blocks_)));
    table_.resize(static_cast<std::size_t>(levels_) * blocks_);
    for (std::size_t b = 0; b < blocks_; ++b) {
      const std::size_t last = std::min(n, b * 32 + 32) - 1;
      table_[b] = {static_cast<std::int32_t>(in_block_left(b * 32, last)),
                   static_cast<std::int32_t>(in_block_right(b * 32, last))};
    }
    for (int k = 1; k < levels_; ++k) {
      const std::size_t half = std::size_t{1} << (k - 1);
      const std::size_t row = static_cast<std::size_t>(k) * blocks_;
      const std::size_t prev = row - blocks_;
      for (std::size_t i = 0; i + (std::size_t{1} << k) <= blocks_; ++i) {
        table_[row + i] = {pick_left(table_[prev + i].left, table_[prev + i + half].left),
                           pick_right(table_[prev + i].right, table_[prev + i + half].right)};
      }
    }
  }

  void prefetch(std::size_t x, std::size_t y) const {
    esa_steps::prefetch(&entry_[x]);
    if (x != y) {
      esa_steps::prefetch(&entry_[y]);
      esa_steps::prefetch(&masks_[y]);
    }
  }

  struct Result {
    std::int32_t lcp;
    std::int32_t next_first;  // next_left at the leftmost minimum
    std::int32_t next_last;   // next_right at the rightmost minimum
  };

  Result query(std::size_t x, std::size_t y) const {
    if (x == y) return {entry_[x].lcp, entry_[x].next_left, entry_[x].next_right};
    const std::size_t bx = x / 32, by = y / 32;
    std::size_t l, r;
    if (bx == by) {
      l = in_block_left(x, y);
      r = in_block_right(x, y);
    } else {
      l = in_block_left(x, bx * 32 + 31);
      r = in_block_right(x, bx * 32 + 31);
      if (bx + 1 < by) {
        const std::size_t a = bx + 1, b = by - 1;
        const int k = std::bit_width(b - a + 1) - 1;
        const std::size_t row = static_cast<std::size_t>(k) * blocks_;
        const std::size_t b2 = b + 1 - (std::size_t{1} << k);
        const auto ml = static_cast<std::size_t>(pick_left(table_[row + a].left, table_[row + b2].left));
        const auto mr = static_cast<std::size_t>(pick_right(table_[row + a].right, table_[row + b2].right));
        absorb(l, r, ml, mr);
      }
      absorb(l, r, in_block_left(by * 32, y), in_block_right(by * 32, y));
    }
    return {entry_[l].lcp, entry_[l].next_left, entry_[r].next_right};
  }

 private:
  struct Masks {
    std::uint32_t keep_equal;
    std::uint32_t drop_equal;
  };
  struct Extremes {
    std::int32_t left;
    std::int32_t right;
  };

  static int top(std::uint32_t m) { return 31 - std::countl_zero(m); }
  std::int32_t value(std::size_t i) const { return entry_[i].lcp; }

  std::size_t in_block_left(std::size_t x, std::size_t y) const {
    const std::uint32_t m = masks_[y].keep_equal & (~0u << (x % 32));
    return (x & ~std::size_t{31}) + static_cast<std::size_t>(std::countr_zero(m));
  }
  std::size_t in_block_right(std::size_t x, std::size_t y) const {
    const std::uint32_t m = masks_[y].drop_equal & (~0u << (x % 32));
    return (x & ~std::size_t{31}) + static_cast<std::size_t>(std::countr_zero(m));
  }
  std::int32_t pick_left(std::int32_t a, std::int32_t b) const {
    return value(static_cast<std::size_t>(b)) < value(static_cast<std::size_t>(a)) ? b : a;
  }
  std::int32_t pick_right(std::int32_t a, std::int32_t b) const {
    return value(static_cast<std::size_t>(a)) < value(static_cast<std::size_t>(b)) ? a : b;
  }
  // Extends (l, r) with a later segment whose extremes are (nl, nr).
  void absorb(std::size_t& l, std::size_t& r, std::size_t nl, std::size_t nr) const {
    if (value(nl) < value(l)) {
      l = nl;
      r = nr;
    } else if (value(nl) == value(l)) {
      r = nr;
    }
  }

  Buffer<PairEntry> entry_;
  Buffer<Masks> masks_;
  std::size_t blocks_ = 0;
  int levels_ = 1;
  Buffer<Extremes> table_;
};

SampleRanks rank_packed(const Buffer<Chain>& chain, std::int32_t max_key) {
  struct Triple {
    std::array<std::int32_t, 3> k;
    NodeId v;
  };
  const std::size_t n = chain.size();
  SampleRanks out;
  out.name.assign(n, 0);
  out.triple.push_back({0, 0, 0});
  Buffer<Triple> order(n);
  std::size_t count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (chain[v].own >= 0) order[count++] = {chain[v].key, static_cast<NodeId>(v)};
  }
  order.resize(count);
  out.sample_count = count;
  if (order.empty()) return out;

  Buffer<Triple> tmp(count);
  // Digits are fused into one counting pass while the bucket array stays
  // about the size of the input.
  const auto range = static_cast<std::size_t>(max_key) + 1;
  const std::size_t limit = std::max<std::size_t>(n, std::size_t{1} << 16);
  if (range <= limit && range * range * range <= limit) {
    counting_pass(order, tmp, range * range * range, [range](const Triple& t) {
      return (static_cast<std::size_t>(t.k[0]) * range + static_cast<std::size_t>(t.k[1])) * range +
             static_cast<std::size_t>(t.k[2]);
    });
  } else if (range <= limit && range * range <= limit) {
    counting_pass(order, tmp, range * range, [range](const Triple& t) {
      return static_cast<std::size_t>(t.k[1]) * range + static_cast<std::size_t>(t.k[2]);
    });
    counting_pass(order, tmp, range, [](const Triple& t) { return t.k[0]; });
  } else {
    counting_pass(order, tmp, range, [](const Triple& t) { return t.k[2]; });
    counting_pass(order, tmp, range, [](const Triple& t) { return t.k[1]; });
    counting_pass(order, tmp, range, [](const Triple& t) { return t.k[0]; });
  }
  std::int32_t name = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || order[i].k != order[i - 1].k) {
      ++name;
      out.triple.push_back(order[i].k);
    }
    out.name[static_cast<std::size_t>(order[i].v)] = name;
  }
  out.distinct = name;
  return out;
}

ContractedForest contract_packed(const Buffer<Chain>& chain, const SampleRanks& ranks) {
  const std::size_t n = chain.size();
  ContractedForest c;
  const std::size_t m = ranks.sample_count;
  c.to_contracted.resize(n);
  c.to_original.resize(m);
  for (std::size_t v = 0; v < n; ++v) {
    const NodeId own = chain[v].own;
    c.to_contracted[v] = own;
    if (own >= 0) c.to_original[static_cast<std::size_t>(own)] = static_cast<NodeId>(v);
  }
  LabeledForest& t = c.forest;
  t.key.resize(m);
  t.parent.resize(m);
  t.depth.resize(m);
  c.label_len.resize(m);
  t.max_key = ranks.distinct;
  for (std::size_t i = 0; i < m; ++i) {
    const auto v = static_cast<std::size_t>(c.to_original[i]);
    t.key[i] = ranks.name[v];
    t.depth[i] = (chain[v].len - 1) / 3;
    c.label_len[i] = chain[v].len;
    t.parent[i] = chain[v].up[2];
  }
  return c;
}

// The first three labels of a suffix and, for the suffixes starting at each
// of them, the first sample rank of their equal-string class (-1 for
// nonsample or missing nodes). Missing labels are 0.
struct alignas(32) NodeInfo {
  std::array<std::int32_t, 3> key;
  std::array<std::int32_t, 3> rank;
  std::int32_t len;
};

// Parents precede children, so each record extends its parent's.
Buffer<NodeInfo> node_info(const LabeledForest& f, std::span<const std::int32_t> classes) {
  constexpr std::size_t kAhead = 16;
  const std::size_t n = f.size();
  Buffer<NodeInfo> info(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (v + kAhead < n && f.parent[v + kAhead] != kNoNode) {
      prefetch(&info[static_cast<std::size_t>(f.parent[v + kAhead])]);
    }
    const std::int32_t own = classes[v] - 1;
    const NodeId p = f.parent[v];
    if (p == kNoNode) {
      info[v] = {{f.key[v], 0, 0}, {own, -1, -1}, 1};
    } else {
      const NodeInfo& up = info[static_cast<std::size_t>(p)];
      info[v] = {{f.key[v], up.key[0], up.key[1]}, {own, up.rank[0], up.rank[1]}, up.len + 1};
    }
  }
  return info;
}

// Nonsample nodes by (key, class of parent), ties by node id.
std::vector<NodeId> sort_nonsample_packed(const Buffer<NodeInfo>& info, std::int32_t max_key) {
  struct Item {
    std::int32_t key;
    std::int32_t cls;
    NodeId v;
  };
  Buffer<Item> order(info.size());
  std::size_t count = 0;
  std::int32_t max_class = 0;
  for (std::size_t v = 0; v < info.size(); ++v) {
    const NodeInfo& h = info[v];
    if (h.rank[0] >= 0) continue;
    const std::int32_t cls = h.rank[1] + 1;
    max_class = std::max(max_class, cls);
    order[count++] = {h.key[0], cls, static_cast<NodeId>(v)};
  }
  order.resize(count);
  std::vector<NodeId> out;
  if (order.empty()) return out;
  Buffer<Item> tmp(count);
  counting_pass(order, tmp, static_cast<std::size_t>(max_class) + 1, [](const Item& t) { return t.cls; });
  counting_pass(order, tmp, static_cast<std::size_t>(max_key) + 1, [](const Item& t) { return t.key; });
  out.resize(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = order[i].v;
  return out;
}

// Merge order: the key, then the class one label on (short form) or the next
// key and the class two labels on (long form). A sample node with a
// nonsample parent is compared in long form, the other sample residue in
// short form.
bool merge_before(const NodeInfo& s, NodeId sv, const NodeInfo& u, NodeId uv, bool long_form) {
  if (s.key[0] != u.key[0]) return s.key[0] < u.key[0];
  if (long_form) {
    if (s.key[1] != u.key[1]) return s.key[1] < u.key[1];
    if (s.rank[2] != u.rank[2]) return s.rank[2] < u.rank[2];
  } else if (s.rank[1] != u.rank[1]) {
    return s.rank[1] < u.rank[1];
  }
  return sv < uv;
}

// Exact lcp of two suffixes from the sample lcps: within three labels either
// they differ or both sit on sample nodes, since each passes the nonsample
// class once.
class PairLcp {
 public:
  explicit PairLcp(Buffer<PairEntry> sample_pairs) : extremes_(std::move(sample_pairs)) {}

  struct Query {
    std::int32_t pos;
    std::int32_t lo;
    std::int32_t hi;
    std::int32_t skipped;  // labels before the sample nodes; negative when ranks are swapped
  };

  // Fills out[i] for the pair (x, y) at ranks i, i + 1 when the keys decide
  // it, and otherwise queues a range query answered later by answer().
  static void classify(std::size_t i, const NodeInfo& x, const NodeInfo& y, AdjacentLcp& out,
                       std::vector<Query>& queries) {
    std::size_t z = 0;
    for (; z < 2; ++z) {
      if (x.key[z] != y.key[z] || x.key[z] == 0) break;
      if (x.rank[z] >= 0 && y.rank[z] >= 0) break;
    }
    const auto lz = static_cast<std::int32_t>(z);
    if (x.key[z] != y.key[z] || x.key[z] == 0) {
      out.lcp[i] = lz;
      out.next_left[i] = x.key[z];
      out.next_right[i] = y.key[z];
      return;
    }
    const std::int32_t ra = x.rank[z];
    const std::int32_t rb = y.rank[z];
    if (ra == rb) {
      out.lcp[i] = x.len;
      out.next_left[i] = 0;
      out.next_right[i] = 0;
      return;
    }
    queries.push_back({static_cast<std::int32_t>(i), std::min(ra, rb), std::max(ra, rb) - 1,
                       ra < rb ? lz : -lz - 1});
  }

  // Queries are answered in one pass so their random reads can be issued
  // ahead of use.
  void answer(const std::vector<Query>& queries, AdjacentLcp& out) const {
    for (std::size_t k = 0; k < queries.size(); ++k) {
      if (k + kAhead < queries.size()) {
        const Query& q = queries[k + kAhead];
        extremes_.prefetch(static_cast<std::size_t>(q.lo), static_cast<std::size_t>(q.hi));
      }
      const Query& q = queries[k];
      const auto e = extremes_.query(static_cast<std::size_t>(q.lo), static_cast<std::size_t>(q.hi));
      const auto i = static_cast<std::size_t>(q.pos);
      const bool in_order = q.skipped >= 0;
      out.lcp[i] = (in_order ? q.skipped : -q.skipped - 1) + e.lcp;
      out.next_left[i] = in_order ? e.next_first : e.next_last;
      out.next_right[i] = in_order ? e.next_last : e.next_first;
    }
  }

  // Fills out[i] for each adjacent pair of `sa`.
  void fill(const Buffer<NodeInfo>& info, std::span<const NodeId> sa, AdjacentLcp& out) const {
    const std::size_t n = sa.size();
    std::vector<Query> queries;
    queries.reserve(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (i + kAhead + 1 < n) prefetch(&info[static_cast<std::size_t>(sa[i + kAhead + 1])]);
      classify(i, info[static_cast<std::size_t>(sa[i])], info[static_cast<std::size_t>(sa[i + 1])], out,
               queries);
    }
    answer(queries, out);
  }

 private:
  static constexpr std::size_t kAhead = 12;

  ExtremeArgmin extremes_;
};

AdjacentLcp empty_adjacent(std::size_t n) {
  AdjacentLcp out;
  out.lcp.assign(n, -1);
  out.next_left.assign(n, 0);
  out.next_right.assign(n, 0);
  return out;
}

// Merges the two sorted lists; on_pair(i, x, y) sees the records of each
// adjacent pair of the result.
template <typename OnPair>
std::vector<NodeId> merge_packed(const Buffer<NodeInfo>& info, int d,
                                 std::span<const NodeId> sample_sa,
                                 std::span<const NodeId> nonsample_sa, OnPair&& on_pair) {
  constexpr std::size_t kAhead = 8;
  const int long_residue = (d + 1) % 3;
  const std::size_t n = sample_sa.size() + nonsample_sa.size();
  std::vector<NodeId> sa(n);
  std::size_t i = 0, j = 0, k = 0;
  const NodeInfo* last = nullptr;
  const auto emit = [&](NodeId v, const NodeInfo& record) {
    sa[k] = v;
    if (k > 0) on_pair(k - 1, *last, record);
    last = &record;
    ++k;
  };
  while (i < sample_sa.size() && j < nonsample_sa.size()) {
    if (i + kAhead < sample_sa.size()) prefetch(&info[static_cast<std::size_t>(sample_sa[i + kAhead])]);
    if (j + kAhead < nonsample_sa.size()) prefetch(&info[static_cast<std::size_t>(nonsample_sa[j + kAhead])]);
    const NodeId s = sample_sa[i];
    const NodeId u = nonsample_sa[j];
    const NodeInfo& fs = info[static_cast<std::size_t>(s)];
    const NodeInfo& fu = info[static_cast<std::size_t>(u)];
    const bool use_long = (fs.len - 1) % 3 == long_residue;
    if (merge_before(fs, s, fu, u, use_long)) {
      emit(s, fs);
      ++i;
    } else {
      emit(u, fu);
      ++j;
    }
  }
  const auto drain = [&](std::span<const NodeId> rest, std::size_t from) {
    for (std::size_t r = from; r < rest.size(); ++r) {
      if (r + kAhead < rest.size()) prefetch(&info[static_cast<std::size_t>(rest[r + kAhead])]);
      emit(rest[r], info[static_cast<std::size_t>(rest[r])]);
    }
  };
  drain(sample_sa, i);
  drain(nonsample_sa, j);
  return sa;
}

Buffer<PairEntry> to_pairs(const AdjacentLcp& adjacent) {
  Buffer<PairEntry> pairs(adjacent.lcp.empty() ? 0 : adjacent.lcp.size() - 1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pairs[i] = {adjacent.lcp[i], adjacent.next_left[i], adjacent.next_right[i]};
  }
  return pairs;
}

// The sorted contracted level read back in original terms.
struct SampleOrder {
  std::vector<NodeId> sa;                // original ids
  std::vector<std::int32_t> classes;     // per original node, see sample_classes
  Buffer<PairEntry> pairs;          // adjacent label lcps, see sample_label_lcp
};

SampleOrder read_sample_order(const SortedLevel& sorted, const ContractedForest& c,
                              const SampleRanks& ranks, std::size_t n) {
  constexpr std::size_t kAhead = 16;
  const auto& sub = sorted.esa;
  const std::size_t m = sub.size();
  SampleOrder out;
  out.sa.resize(m);
  out.classes.assign(n, 0);
  out.pairs.resize(m == 0 ? 0 : m - 1);
  std::int32_t cls = 0;
  std::int32_t prev_len = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i + kAhead < m) {
      const auto ahead = static_cast<std::size_t>(sub.sa[i + kAhead]);
      prefetch(&c.to_original[ahead]);
      prefetch(&c.label_len[ahead]);
    }
    const auto x = static_cast<std::size_t>(sub.sa[i]);
    const NodeId v = c.to_original[x];
    const std::int32_t len = c.label_len[x];
    out.sa[i] = v;
    bool same = false;
    if (i > 0) {
      // Labels of the pair (i - 1, i): the contracted lcp in whole triples,
      // then the common head of the triples that follow it.
      const auto& ta = ranks.triple[static_cast<std::size_t>(sorted.adjacent.next_left[i - 1])];
      const auto& tb = ranks.triple[static_cast<std::size_t>(sorted.adjacent.next_right[i - 1])];
      std::size_t k = 0;
      while (k < 3 && ta[k] == tb[k] && ta[k] != 0) ++k;
      const std::int32_t common =
          std::min({3 * sub.lcp[i - 1] + static_cast<std::int32_t>(k), prev_len, len});
      out.pairs[i - 1] = {common, common == prev_len ? 0 : ta[k], common == len ? 0 : tb[k]};
      same = common == prev_len && common == len;
    }
    if (!same) cls = static_cast<std::int32_t>(i) + 1;
    out.classes[static_cast<std::size_t>(v)] = cls;
    prev_len = len;
  }
  return out;
}

std::vector<std::int32_t> rank_inverse(std::span<const NodeId> sa) {
  std::vector<std::int32_t> rsa(sa.size());
  for (std::size_t i = 0; i < sa.size(); ++i) rsa[static_cast<std::size_t>(sa[i])] = static_cast<std::int32_t>(i);
  return rsa;
}

}  // namespace

int choose_depth_class(const LabeledForest& forest) {
  std::array<std::size_t, 3> count{};
  for (auto dep : forest.depth) ++count[static_cast<std::size_t>(dep % 3)];
  int best = 0;
  for (int c = 1; c < 3; ++c) {
    if (count[c] > count[best]) best = c;
  }
  return best;
}

SampleRanks rank_sample_triples(const LabeledForest& f, int d) {
  return rank_packed(build_chain(f, d), f.max_key);
}

ContractedForest build_contracted(const LabeledForest& f, int d, const SampleRanks& ranks) {
  return contract_packed(build_chain(f, d), ranks);
}

SortedLevel sort_distinct_ranks(const ContractedForest& c) {
  const auto& t = c.forest;
  const std::size_t m = t.size();
  SortedLevel out;
  TreeSuffixArray& e = out.esa;
  e.sa.resize(m);
  e.rsa.resize(m);
  e.suffix_len.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    e.rsa[i] = t.key[i] - 1;
    e.sa[static_cast<std::size_t>(t.key[i] - 1)] = static_cast<NodeId>(i);
    e.suffix_len[i] = t.depth[i] + 1;
  }
  e.lcp.assign(m, 0);
  out.adjacent.next_left.assign(m, 0);
  out.adjacent.next_right.assign(m, 0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    out.adjacent.next_left[i] = static_cast<std::int32_t>(i) + 1;
    out.adjacent.next_right[i] = static_cast<std::int32_t>(i) + 2;
  }
  if (m > 0) e.lcp.back() = -1;
  out.adjacent.lcp = e.lcp;
  return out;
}

std::optional<SortedLevel> sort_few_ties(const LabeledForest& t, std::size_t budget) {
  const std::size_t m = t.size();
  SortedLevel out;
  TreeSuffixArray& e = out.esa;
  std::vector<std::int32_t> start(static_cast<std::size_t>(t.max_key) + 2, 0);
  for (std::size_t i = 0; i < m; ++i) ++start[static_cast<std::size_t>(t.key[i]) + 1];
  for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
  e.sa.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    e.sa[static_cast<std::size_t>(start[static_cast<std::size_t>(t.key[i])]++)] = static_cast<NodeId>(i);
  }

  // Walks up from a and b while their keys agree; returns the common length
  // and the keys where they part (0 past a root, both 0 for equal strings).
  struct Walk {
    std::int32_t lcp;
    std::int32_t left;
    std::int32_t right;
  };
  struct OverBudget {};
  std::size_t spent = 0;
  const auto walk = [&](NodeId a, NodeId b) {
    std::int32_t k = 0;
    while (a != kNoNode && b != kNoNode && t.key[static_cast<std::size_t>(a)] == t.key[static_cast<std::size_t>(b)]) {
      if (a == b) {
        spent += static_cast<std::size_t>(k);
        return Walk{k + t.depth[static_cast<std::size_t>(a)] + 1, 0, 0};
      }
      a = t.parent[static_cast<std::size_t>(a)];
      b = t.parent[static_cast<std::size_t>(b)];
      ++k;
    }
    spent += static_cast<std::size_t>(k);
    if (spent > budget) throw OverBudget{};
    return Walk{k, a == kNoNode ? 0 : t.key[static_cast<std::size_t>(a)],
                b == kNoNode ? 0 : t.key[static_cast<std::size_t>(b)]};
  };

  out.adjacent = empty_adjacent(m);
  try {
    std::size_t i = 0;
    while (i < m) {
      const std::int32_t key = t.key[static_cast<std::size_t>(e.sa[i])];
      std::size_t j = i + 1;
      while (j < m && t.key[static_cast<std::size_t>(e.sa[j])] == key) ++j;
      if (j - i > 1) {
        std::sort(e.sa.begin() + static_cast<std::ptrdiff_t>(i), e.sa.begin() + static_cast<std::ptrdiff_t>(j),
                  [&](NodeId a, NodeId b) {
                    const Walk w = walk(a, b);
                    return w.left != w.right ? w.left < w.right : a < b;
                  });
        for (std::size_t r = i; r + 1 < j; ++r) {
          const Walk w = walk(e.sa[r], e.sa[r + 1]);
          out.adjacent.lcp[r] = w.lcp;
          out.adjacent.next_left[r] = w.left;
          out.adjacent.next_right[r] = w.right;
        }
      }
      if (j < m) {
        out.adjacent.lcp[j - 1] = 0;
        out.adjacent.next_left[j - 1] = key;
        out.adjacent.next_right[j - 1] = t.key[static_cast<std::size_t>(e.sa[j])];
      }
      i = j;
    }
  } catch (const OverBudget&) {
    return std::nullopt;
  }
  e.lcp = out.adjacent.lcp;
  e.rsa.resize(m);
  for (std::size_t r = 0; r < m; ++r) e.rsa[static_cast<std::size_t>(e.sa[r])] = static_cast<std::int32_t>(r);
  e.suffix_len.resize(m);
  for (std::size_t v = 0; v < m; ++v) e.suffix_len[v] = t.depth[v] + 1;
  return out;
}

std::vector<std::int32_t> sample_classes(const TreeSuffixArray& sub,
                                         const ContractedForest& c,
                                         std::size_t n) {
  std::vector<std::int32_t> classes(n, 0);
  std::int32_t cls = 0;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const NodeId x = sub.sa[i];
    bool same = false;
    if (i > 0) {
      const NodeId w = sub.sa[i - 1];
      same = sub.suffix_len[w] == sub.suffix_len[x] &&
             sub.lcp[i - 1] == sub.suffix_len[x];
    }
    if (!same) cls = static_cast<std::int32_t>(i) + 1;
    classes[c.to_original[x]] = cls;
  }
  return classes;
}

std::vector<NodeId> sort_nonsample(const LabeledForest& f, std::span<const std::int32_t> classes) {
  return sort_nonsample_packed(node_info(f, classes), f.max_key);
}

std::vector<NodeId> merge_sample_nonsample(const LabeledForest& f, int d,
                                           std::span<const NodeId> sample_sa,
                                           std::span<const NodeId> nonsample_sa,
                                           std::span<const std::int32_t> classes) {
  const auto info = node_info(f, classes);
  return merge_packed(info, d, sample_sa, nonsample_sa, [](std::size_t, const NodeInfo&, const NodeInfo&) {});
}

AdjacentLcp sample_label_lcp(const SortedLevel& sorted, const ContractedForest& c,
                             const SampleRanks& ranks) {
  const auto order = read_sample_order(sorted, c, ranks, c.to_contracted.size());
  AdjacentLcp out = empty_adjacent(order.sa.size());
  for (std::size_t i = 0; i < order.pairs.size(); ++i) {
    out.lcp[i] = order.pairs[i].lcp;
    out.next_left[i] = order.pairs[i].next_left;
    out.next_right[i] = order.pairs[i].next_right;
  }
  return out;
}

AdjacentLcp lift_lcp(const LabeledForest& f, const ContractedForest& contracted,
                     const TreeSuffixArray& contracted_esa, const AdjacentLcp& sample_lcp,
                     std::span<const NodeId> sa) {
  const auto classes = sample_classes(contracted_esa, contracted, f.size());
  const auto info = node_info(f, classes);
  const PairLcp pair_lcp(to_pairs(sample_lcp));
  AdjacentLcp out = empty_adjacent(sa.size());
  pair_lcp.fill(info, sa, out);
  return out;
}

SortedLevel sort_level_reference(const LabeledForest& f) {
  SortedLevel out;
  out.esa = build_esa_reference(f);
  const std::size_t n = f.size();
  out.adjacent.lcp = out.esa.lcp;
  out.adjacent.next_left.assign(n, 0);
  out.adjacent.next_right.assign(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    NodeId x = out.esa.sa[i];
    NodeId y = out.esa.sa[i + 1];
    for (std::int32_t k = 0; k < out.esa.lcp[i]; ++k) {
      x = f.parent[static_cast<std::size_t>(x)];
      y = f.parent[static_cast<std::size_t>(y)];
    }
    out.adjacent.next_left[i] = x == kNoNode ? 0 : f.key[static_cast<std::size_t>(x)];
    out.adjacent.next_right[i] = y == kNoNode ? 0 : f.key[static_cast<std::size_t>(y)];
  }
  return out;
}

namespace {

constexpr std::size_t kFewRepeats = 8;

SortedLevel sort_level_impl(const LabeledForest& f, bool with_inverse) {
  const std::size_t n = f.size();
  if (n <= kBaseCaseSize) return sort_level_reference(f);

  const int d = choose_depth_class(f);
  const Buffer<Chain> chain = build_chain(f, d);
  const SampleRanks ranks = rank_packed(chain, f.max_key);
  const ContractedForest contracted = contract_packed(chain, ranks);
  // Few repeated names are told apart by direct comparison, within a budget
  // linear in the sample size; otherwise the contracted forest is recursed on.
  std::optional<SortedLevel> sorted;
  const std::size_t repeats = ranks.sample_count - static_cast<std::size_t>(ranks.distinct);
  if (repeats == 0) {
    sorted = sort_distinct_ranks(contracted);
  } else if (repeats * kFewRepeats <= ranks.sample_count) {
    sorted = sort_few_ties(contracted.forest, ranks.sample_count);
  }
  if (!sorted) sorted = sort_level_impl(contracted.forest, false);
  const SortedLevel& sub = *sorted;

  SampleOrder sample = read_sample_order(sub, contracted, ranks, n);
  const auto info = node_info(f, sample.classes);
  const auto nonsample_sa = sort_nonsample_packed(info, f.max_key);
  const PairLcp pair_lcp(std::move(sample.pairs));

  SortedLevel out;
  out.adjacent = empty_adjacent(n);
  std::vector<PairLcp::Query> queries;
  queries.reserve(n);
  out.esa.sa = merge_packed(info, d, sample.sa, nonsample_sa,
                            [&](std::size_t i, const NodeInfo& x, const NodeInfo& y) {
                              PairLcp::classify(i, x, y, out.adjacent, queries);
                            });
  pair_lcp.answer(queries, out.adjacent);
  out.esa.lcp = out.adjacent.lcp;
  if (with_inverse) out.esa.rsa = rank_inverse(out.esa.sa);
  out.esa.suffix_len.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.esa.suffix_len[v] = f.depth[v] + 1;
  return out;
}

}  // namespace

SortedLevel sort_level(const LabeledForest& f) { return sort_level_impl(f, true); }

}  // namespace esa_steps

TreeSuffixArray build_esa_linear(const LabeledForest& f) {
  const std::size_t n = f.size();
  if (n <= esa_steps::kBaseCaseSize) return build_esa_reference(f);

  // Nodes with identical suffixes (same key, parents identical) are sorted
  // once, as a single node of a smaller forest. Each group lists its child
  // groups; entry 0 holds the groups without a parent. A list that grows
  // long is indexed in a hash map instead.
  struct Entry {
    std::int32_t key;
    NodeId first_child;
    NodeId next_sibling;
    std::int32_t child_count;
  };
  constexpr std::int32_t kShortList = 16;
  esa_steps::Buffer<NodeId> group(n);
  struct Span {
    std::int32_t size;
    std::int32_t cursor;
  };
  esa_steps::Buffer<Span> span(n);
  LabeledForest g;
  g.max_key = f.max_key;
  g.key.resize(n);
  g.parent.resize(n);
  g.depth.resize(n);
  std::size_t m = 0;
  {
    esa_steps::Buffer<Entry> entry(n + 1);
    entry[0] = {0, kNoNode, kNoNode, 0};
    std::unordered_map<std::uint64_t, NodeId> wide;
    const auto range = static_cast<std::uint64_t>(f.max_key) + 1;
    const auto slot = [range](std::size_t list, std::int32_t key) {
      return static_cast<std::uint64_t>(list) * range + static_cast<std::uint64_t>(key);
    };
    const auto at = [&entry](NodeId gid) -> Entry& { return entry[static_cast<std::size_t>(gid) + 1]; };
    for (std::size_t v = 0; v < n; ++v) {
      const NodeId p = f.parent[v];
      const NodeId gp = p == kNoNode ? kNoNode : group[static_cast<std::size_t>(p)];
      const auto list = static_cast<std::size_t>(gp + 1);
      const std::int32_t key = f.key[v];
      NodeId found = kNoNode;
      if (entry[list].child_count > kShortList) {
        const auto it = wide.find(slot(list, key));
        if (it != wide.end()) found = it->second;
      } else {
        for (NodeId c = entry[list].first_child; c != kNoNode; c = at(c).next_sibling) {
          if (at(c).key == key) {
            found = c;
            break;
          }
        }
      }
      if (found != kNoNode) {
        ++span[static_cast<std::size_t>(found)].size;
      } else {
        span[m].size = 1;
        found = static_cast<NodeId>(m);
        g.key[m] = key;
        g.parent[m] = gp;
        g.depth[m] = f.depth[v];
        entry[++m] = {key, kNoNode, entry[list].first_child, 0};
        Entry& parent_list = entry[list];
        parent_list.first_child = found;
        if (++parent_list.child_count == kShortList + 1) {
          for (NodeId c = found; c != kNoNode; c = at(c).next_sibling) wide.emplace(slot(list, at(c).key), c);
        } else if (parent_list.child_count > kShortList + 1) {
          wide.emplace(slot(list, key), found);
        }
      }
      group[v] = found;
    }
  }
  g.key.resize(m);
  g.parent.resize(m);
  g.depth.resize(m);

  const TreeSuffixArray sorted = m <= esa_steps::kBaseCaseSize
                                     ? build_esa_reference(g)
                                     : esa_steps::sort_level(g).esa;

  // Expand each group into its members in id order; members are equal over
  // their whole length.
  TreeSuffixArray out;
  out.sa.resize(n);
  out.lcp.resize(n);
  out.rsa.resize(n);
  out.suffix_len.resize(n);
  std::int32_t next = 0;
  for (std::size_t r = 0; r < m; ++r) {
    const auto gid = static_cast<std::size_t>(sorted.sa[r]);
    Span& sp = span[gid];
    sp.cursor = next;
    next += sp.size;
    const std::int32_t len = g.depth[gid] + 1;
    for (std::int32_t i = sp.cursor; i + 1 < next; ++i) out.lcp[static_cast<std::size_t>(i)] = len;
    out.lcp[static_cast<std::size_t>(next - 1)] = sorted.lcp[r];
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto i = static_cast<std::size_t>(span[static_cast<std::size_t>(group[v])].cursor++);
    out.sa[i] = static_cast<NodeId>(v);
    out.rsa[v] = static_cast<std::int32_t>(i);
    out.suffix_len[v] = f.depth[v] + 1;
  }
  return out;
}

}  // namespace subpath
