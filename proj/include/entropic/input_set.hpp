#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace entropic {

/// Fixed-size bitset over the enumerated inputs of one domain.
class InputSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kBits = 64;

  InputSet() = default;
  explicit InputSet(std::size_t size, bool full = false)
      : size_(size), words_((size + kBits - 1) / kBits, full ? ~Word{0} : Word{0}) {
    if (full) trim();
  }

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  const Word* data() const { return words_.data(); }
  Word* data() { return words_.data(); }

  bool test(std::size_t i) const { return (words_[i / kBits] >> (i % kBits)) & 1U; }
  void set(std::size_t i) { words_[i / kBits] |= Word{1} << (i % kBits); }
  void reset(std::size_t i) { words_[i / kBits] &= ~(Word{1} << (i % kBits)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (Word w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  InputSet& operator&=(const InputSet& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  InputSet& operator|=(const InputSet& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  InputSet& operator^=(const InputSet& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  InputSet& operator-=(const InputSet& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend InputSet operator&(InputSet a, const InputSet& b) { return a &= b; }
  friend InputSet operator|(InputSet a, const InputSet& b) { return a |= b; }
  friend InputSet operator^(InputSet a, const InputSet& b) { return a ^= b; }
  friend InputSet operator-(InputSet a, const InputSet& b) { return a -= b; }
  InputSet complement() const {
    InputSet c = *this;
    for (Word& w : c.words_) w = ~w;
    c.trim();
    return c;
  }

  bool subset_of(const InputSet& o) const {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }
  std::size_t intersection_count(const InputSet& o) const {
    check(o);
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    }
    return c;
  }

  /// Calls f(i) for every member, ascending.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w != 0) {
        f(wi * kBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  /// ORs a block of `src` words into this set starting at word `offset`.
  void or_words(std::size_t offset, const Word* src, std::size_t n) {
    for (std::size_t i = 0; i < n && offset + i < words_.size(); ++i) words_[offset + i] |= src[i];
  }

  friend bool operator==(const InputSet&, const InputSet&) = default;

 private:
  void check(const InputSet& o) const {
    if (o.size_ != size_) throw std::invalid_argument("InputSet size mismatch");
  }
  void trim() {
    if (size_ % kBits != 0 && !words_.empty()) {
      words_.back() &= (Word{1} << (size_ % kBits)) - 1;
    }
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace entropic
