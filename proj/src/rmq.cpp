#include "subpath/rmq.hpp"

#include <algorithm>
#include <stdexcept>

namespace subpath {

RmqIndex::RmqIndex(std::span<const std::int32_t> values)
    : values_(values.begin(), values.end()), masks_(values.size()) {
  const std::size_t n = values_.size();
  if (n == 0) return;
  block_count_ = (n + kBlock - 1) >> kShift;
  for (std::size_t b = 0; b < block_count_; ++b) {
    const std::size_t start = b << kShift;
    const std::size_t end = std::min(n, start + kBlock);
    std::uint32_t stack = 0;
    for (std::size_t i = start; i < end; ++i) {
      // Drop stack entries not smaller than the new value.
      while (stack != 0) {
        const int top = 31 - std::countl_zero(stack);
        if (values_[start + static_cast<std::size_t>(top)] < values_[i]) break;
        stack &= ~(std::uint32_t{1} << top);
      }
      stack |= std::uint32_t{1} << (i - start);
      masks_[i] = stack;
    }
  }
  const int levels = std::bit_width(block_count_);
  table_.resize(static_cast<std::size_t>(levels) * block_count_);
  for (std::size_t b = 0; b < block_count_; ++b) {
    const std::size_t start = b << kShift;
    table_[b] = *std::min_element(values_.begin() + static_cast<std::ptrdiff_t>(start),
                                  values_.begin() + static_cast<std::ptrdiff_t>(std::min(n, start + kBlock)));
  }
  for (int k = 1; k < levels; ++k) {
    const std::size_t half = std::size_t{1} << (k - 1);
    const std::int32_t* prev = table_.data() + static_cast<std::size_t>(k - 1) * block_count_;
    std::int32_t* cur = table_.data() + static_cast<std::size_t>(k) * block_count_;
    const std::size_t limit = block_count_ - (std::size_t{1} << k) + 1;
    for (std::size_t i = 0; i < limit; ++i) cur[i] = std::min(prev[i], prev[i + half]);
  }
}

std::int32_t RmqIndex::query(std::size_t x, std::size_t y) const {
  if (x > y || y >= values_.size()) throw std::out_of_range("invalid range-minimum query");
  return min_unchecked(x, y);
}

}  // namespace subpath
