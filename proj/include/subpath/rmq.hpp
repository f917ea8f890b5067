#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace subpath {

/// Range-minimum over a fixed integer array in O(n) words and O(1) time.
/// Positions are grouped into blocks of 32. Inside a block each position
/// keeps a bitmask of the suffix-minimum stack ending there; block minima get
/// a sparse table.
class RmqIndex {
 public:
  RmqIndex() = default;
  explicit RmqIndex(std::span<const std::int32_t> values);

  /// min(values[x..y]) inclusive. Throws std::out_of_range unless
  /// x <= y < size().
  std::int32_t query(std::size_t x, std::size_t y) const;

  std::int32_t min_unchecked(std::size_t x, std::size_t y) const {
    const std::size_t bx = x >> kShift;
    const std::size_t by = y >> kShift;
    if (bx == by) return in_block(x, y);
    std::int32_t best = std::min(in_block(x, (bx << kShift) + kBlock - 1), in_block(by << kShift, y));
    if (bx + 1 < by) best = std::min(best, blocks(bx + 1, by - 1));
    return best;
  }

  std::size_t size() const { return values_.size(); }

 private:
  static constexpr int kShift = 5;
  static constexpr std::size_t kBlock = std::size_t{1} << kShift;

  std::int32_t in_block(std::size_t x, std::size_t y) const {
    const std::uint32_t m = masks_[y] & (~std::uint32_t{0} << (x & (kBlock - 1)));
    return values_[(x & ~(kBlock - 1)) + static_cast<std::size_t>(std::countr_zero(m))];
  }

  std::int32_t blocks(std::size_t x, std::size_t y) const {
    const int k = std::bit_width(y - x + 1) - 1;
    const std::int32_t* row = table_.data() + static_cast<std::size_t>(k) * block_count_;
    return std::min(row[x], row[y + 1 - (std::size_t{1} << k)]);
  }

  std::vector<std::int32_t> values_;
  std::vector<std::uint32_t> masks_;
  std::size_t block_count_ = 0;
  std::vector<std::int32_t> table_;  // row k: minima of 2^k consecutive blocks
};

/// Convenience free function mirroring RmqIndex::query.
inline std::int32_t rmq(const RmqIndex& index, std::size_t x, std::size_t y) {
  return index.query(x, y);
}

}  // namespace subpath
