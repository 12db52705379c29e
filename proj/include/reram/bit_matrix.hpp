#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace reram {

// Square bit matrix, one row packed into ceil(n/64) little-endian words.
// Trailing bits of the last word in each row are kept at zero.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n)
      : n_(n), wpr_((n + 63) / 64), w_(static_cast<std::size_t>(n) * wpr_, 0) {}

  int n() const { return n_; }
  int words_per_row() const { return wpr_; }

  bool get(int r, int c) const {
    return (row(r)[c >> 6] >> (c & 63)) & 1u;
  }
  void set(int r, int c, bool v) {
    std::uint64_t m = std::uint64_t{1} << (c & 63);
    if (v)
      row(r)[c >> 6] |= m;
    else
      row(r)[c >> 6] &= ~m;
  }

  std::uint64_t* row(int r) { return w_.data() + static_cast<std::size_t>(r) * wpr_; }
  const std::uint64_t* row(int r) const {
    return w_.data() + static_cast<std::size_t>(r) * wpr_;
  }

  std::uint64_t* data() { return w_.data(); }
  const std::uint64_t* data() const { return w_.data(); }
  std::size_t word_count() const { return w_.size(); }

  std::int64_t count_ones() const {
    std::int64_t s = 0;
    for (std::uint64_t x : w_) s += std::popcount(x);
    return s;
  }

  void clear() { std::fill(w_.begin(), w_.end(), std::uint64_t{0}); }

  bool operator==(const BitMatrix& o) const {
    return n_ == o.n_ && w_ == o.w_;
  }

 private:
  int n_ = 0;
  int wpr_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace reram
