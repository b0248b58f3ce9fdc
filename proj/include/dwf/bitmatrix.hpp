#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace dwf {

// Flat bit vector over 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::uint64_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::uint64_t size() const { return n_; }
  std::uint64_t word_count() const { return words_.size(); }

  void set(std::uint64_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
  void reset(std::uint64_t i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1ULL;
  }

  std::uint64_t popcount() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Row-major square bit matrix. Rows are word-aligned so row intersections
// reduce to word AND + popcount.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::uint32_t n)
      : n_(n),
        wpr_((static_cast<std::uint64_t>(n) + 63) / 64),
        words_(static_cast<std::uint64_t>(n) * wpr_, 0) {}

  std::uint32_t dim() const { return n_; }
  std::uint64_t words_per_row() const { return wpr_; }

  void set(std::uint32_t r, std::uint32_t c) {
    words_[r * wpr_ + (c >> 6)] |= (1ULL << (c & 63));
  }
  bool test(std::uint32_t r, std::uint32_t c) const {
    return (words_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1ULL;
  }

  std::span<const std::uint64_t> row(std::uint32_t r) const {
    return {words_.data() + r * wpr_, wpr_};
  }

  std::uint64_t popcount() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::uint32_t n_ = 0;
  std::uint64_t wpr_ = 0;
  std::vector<std::uint64_t> words_;
};

// Number of set positions shared by two equally sized word spans.
inline std::uint64_t intersect_count(std::span<const std::uint64_t> a,
                                     std::span<const std::uint64_t> b) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

}  // namespace dwf
