#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

#include "juniper/vertex_set.hpp"

namespace juniper::detail {

// Fixed-capacity bitset used on the solver's hot path. Mirrors the subset of
// the VertexSet interface that the reduction templates rely on.
template <std::size_t W>
struct FixedBits {
  std::array<std::uint64_t, W> w{};

  static constexpr int capacity = static_cast<int>(W * 64);

  static FixedBits from(const VertexSet& s) {
    FixedBits b;
    auto words = s.words();
    for (std::size_t i = 0; i < W && i < words.size(); ++i) b.w[i] = words[i];
    return b;
  }
  VertexSet to_vertex_set(int universe) const {
    VertexSet s(universe);
    for_each([&](int v) { s.set(v); });
    return s;
  }

  bool test(int v) const noexcept { return (w[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U; }
  void set(int v) noexcept { w[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(int v) noexcept { w[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void clear() noexcept { w.fill(0); }

  int count() const noexcept {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool none() const noexcept {
    for (auto x : w) {
      if (x != 0) return false;
    }
    return true;
  }
  bool any() const noexcept { return !none(); }
  int first() const noexcept {
    for (std::size_t i = 0; i < W; ++i) {
      if (w[i] != 0) return static_cast<int>(i * 64 + static_cast<std::size_t>(std::countr_zero(w[i])));
    }
    return -1;
  }
  bool intersects(const FixedBits& o) const noexcept {
    for (std::size_t i = 0; i < W; ++i) {
      if ((w[i] & o.w[i]) != 0) return true;
    }
    return false;
  }

  FixedBits& operator&=(const FixedBits& o) noexcept {
    for (std::size_t i = 0; i < W; ++i) w[i] &= o.w[i];
    return *this;
  }
  FixedBits& operator|=(const FixedBits& o) noexcept {
    for (std::size_t i = 0; i < W; ++i) w[i] |= o.w[i];
    return *this;
  }
  FixedBits& operator-=(const FixedBits& o) noexcept {
    for (std::size_t i = 0; i < W; ++i) w[i] &= ~o.w[i];
    return *this;
  }
  friend FixedBits operator&(FixedBits a, const FixedBits& b) noexcept { return a &= b; }
  friend FixedBits operator|(FixedBits a, const FixedBits& b) noexcept { return a |= b; }
  friend FixedBits operator-(FixedBits a, const FixedBits& b) noexcept { return a -= b; }
  friend bool operator==(const FixedBits&, const FixedBits&) = default;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < W; ++i) {
      std::uint64_t bits = w[i];
      while (bits != 0) {
        f(static_cast<int>(i * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
  }
};

}  // namespace juniper::detail
