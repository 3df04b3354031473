#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sfast {

/// Fixed-size dynamic bitset used for adjacency rows and vertex sets.
/// Word-parallel intersection counts are the reason this exists instead of
/// std::vector<bool>.
class Bitset {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bitset() = default;
  explicit Bitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    assert(i < size_);
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  void set(std::size_t i) {
    assert(i < size_);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void reset(std::size_t i) {
    assert(i < size_);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void assign(std::size_t i, bool value) { value ? set(i) : reset(i); }

  void set_all() {
    for (auto& w : words_) w = ~std::uint64_t{0};
    trim();
  }
  void reset_all() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w != 0) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t find_first() const { return find_from(0); }
  std::size_t find_next(std::size_t i) const { return find_from(i + 1); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(wi * 64 + bit);
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
  }

  Bitset& operator&=(const Bitset& o) {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  Bitset& operator-=(const Bitset& o) {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  Bitset operator~() const {
    Bitset r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  friend bool operator==(const Bitset&, const Bitset&) = default;

  static std::size_t intersect_count(const Bitset& a, const Bitset& b) {
    assert(a.size_ == b.size_);
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    return c;
  }
  static std::size_t intersect_count(const Bitset& a, const Bitset& b, const Bitset& c) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      r += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i] & c.words_[i]));
    return r;
  }
  static bool intersects(const Bitset& a, const Bitset& b) {
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      if ((a.words_[i] & b.words_[i]) != 0) return true;
    return false;
  }
  /// First index set in both, or npos.
  static std::size_t first_common(const Bitset& a, const Bitset& b, std::size_t from = 0) {
    for (std::size_t wi = from >> 6; wi < a.words_.size(); ++wi) {
      std::uint64_t w = a.words_[wi] & b.words_[wi];
      if (wi == (from >> 6)) w &= ~std::uint64_t{0} << (from & 63);
      if (w != 0) return wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
    }
    return npos;
  }

 private:
  std::size_t find_from(std::size_t i) const {
    if (i >= size_) return npos;
    std::size_t wi = i >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (w != 0) return wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return npos;
      w = words_[wi];
    }
  }
  void trim() {
    if (size_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace sfast
