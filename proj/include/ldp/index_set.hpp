#ifndef LDP_INDEX_SET_HPP
#define LDP_INDEX_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ldp {

// Set of value-support indices, packed 64 per word. Value sets in layer
// sequences and initial values are always subsets of one finite support, so
// all set algebra reduces to word-wise bit operations.
class IndexSet {
 public:
  IndexSet() : size_(0) {}
  explicit IndexSet(int universe_size)
      : size_(universe_size), words_((universe_size + 63) / 64, 0) {}

  int universe_size() const { return size_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  IndexSet& operator|=(const IndexSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  IndexSet& operator&=(const IndexSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  // Set difference: removes every element of o.
  IndexSet& operator-=(const IndexSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  bool operator==(const IndexSet& o) const {
    return size_ == o.size_ && words_ == o.words_;
  }

  bool intersects(const IndexSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  bool contains_all(const IndexSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (o.words_[k] & ~words_[k]) return false;
    return true;
  }

  // Elements in ascending index order.
  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(count());
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<int>(k * 64 + b));
        w &= w - 1;
      }
    }
    return out;
  }

  int first() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return static_cast<int>(k * 64 + std::countr_zero(words_[k]));
    return -1;
  }

  static IndexSet full(int universe_size) {
    IndexSet s(universe_size);
    for (int i = 0; i < universe_size; ++i) s.set(i);
    return s;
  }

 private:
  int size_;
  std::vector<std::uint64_t> words_;
};

}  // namespace ldp

#endif  // LDP_INDEX_SET_HPP
