#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace juniper {

/// Subset of [0..universe] stored as a dynamic bitset.
///
/// Game code only ever stores numbers 1..n; bit 0 stays clear. The canonical
/// serialized form (`to_bit_string`) has one character per number 1..n and is
/// what positions use as a transposition key outside the solver.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe);
  VertexSet(int universe, std::initializer_list<int> members);

  /// {lo, lo+1, ..., hi} inside [0..universe].
  static VertexSet interval(int universe, int lo, int hi);
  static VertexSet from_vector(int universe, const std::vector<int>& members);
  static VertexSet from_bit_string(std::string_view bits);

  int universe() const noexcept { return universe_; }

  bool test(int v) const noexcept {
    return v >= 0 && v <= universe_ && ((words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U);
  }
  bool contains(int v) const noexcept { return test(v); }
  void set(int v);
  void reset(int v) noexcept {
    if (v >= 0 && v <= universe_) words_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }
  void clear() noexcept;

  int count() const noexcept;
  bool none() const noexcept;
  bool any() const noexcept { return !none(); }
  bool empty() const noexcept { return none(); }
  /// Smallest member, or -1.
  int first() const noexcept;
  bool intersects(const VertexSet& other) const noexcept;
  bool is_subset_of(const VertexSet& other) const noexcept;

  VertexSet& operator&=(const VertexSet& other) noexcept;
  VertexSet& operator|=(const VertexSet& other) noexcept;
  /// Set difference.
  VertexSet& operator-=(const VertexSet& other) noexcept;

  friend VertexSet operator&(VertexSet a, const VertexSet& b) noexcept { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) noexcept { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) noexcept { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> to_vector() const;
  /// One '0'/'1' per number 1..universe.
  std::string to_bit_string() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

 private:
  int universe_ = 0;
  std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept { return s.hash(); }
};

}  // namespace juniper
