#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace tempnet::detail {

/// Fixed-size bitset sized at runtime.
class DenseBitset {
 public:
  explicit DenseBitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  [[nodiscard]] bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  void merge(const DenseBitset& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  }

  /// Calls fn(i) for every bit set in `other` but not here, then merges.
  template <typename Fn>
  bool absorb(const DenseBitset& other, Fn&& fn) {
    bool changed = false;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t fresh = other.words_[w] & ~words_[w];
      if (fresh == 0) continue;
      changed = true;
      words_[w] |= fresh;
      while (fresh != 0) {
        const int b = std::countr_zero(fresh);
        fn(w * 64 + static_cast<std::size_t>(b));
        fresh &= fresh - 1;
      }
    }
    return changed;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace tempnet::detail
