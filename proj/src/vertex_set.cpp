#include "juniper/vertex_set.hpp"

#include "juniper/errors.hpp"

namespace juniper {

namespace {

std::size_t words_for(int universe) { return static_cast<std::size_t>(universe) / 64 + 1; }

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

VertexSet::VertexSet(int universe) : universe_(universe), words_(words_for(universe), 0) {
  if (universe < 0) throw InvalidArgument("vertex set universe must be non-negative");
}

VertexSet::VertexSet(int universe, std::initializer_list<int> members) : VertexSet(universe) {
  for (int v : members) set(v);
}

VertexSet VertexSet::interval(int universe, int lo, int hi) {
  VertexSet s(universe);
  for (int v = lo; v <= hi; ++v) s.set(v);
  return s;
}

VertexSet VertexSet::from_vector(int universe, const std::vector<int>& members) {
  VertexSet s(universe);
  for (int v : members) s.set(v);
  return s;
}

VertexSet VertexSet::from_bit_string(std::string_view bits) {
  VertexSet s(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      s.set(static_cast<int>(i) + 1);
    } else if (bits[i] != '0') {
      throw InvalidArgument("bit string may only contain '0' and '1'");
    }
  }
  return s;
}

void VertexSet::set(int v) {
  if (v < 0 || v > universe_) {
    throw InvalidArgument("vertex " + std::to_string(v) + " outside [0.." + std::to_string(universe_) + "]");
  }
  words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::clear() noexcept {
  for (auto& w : words_) w = 0;
}

int VertexSet::count() const noexcept {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::none() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

int VertexSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
  }
  return -1;
}

bool VertexSet::intersects(const VertexSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

bool VertexSet::is_subset_of(const VertexSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
    if ((words_[i] & ~o) != 0) return false;
  }
  return true;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::vector<int> VertexSet::to_vector() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count()));
  for_each([&](int v) { out.push_back(v); });
  return out;
}

std::string VertexSet::to_bit_string() const {
  std::string s(static_cast<std::size_t>(universe_), '0');
  for_each([&](int v) {
    if (v >= 1) s[static_cast<std::size_t>(v) - 1] = '1';
  });
  return s;
}

std::size_t VertexSet::hash() const noexcept {
  std::uint64_t h = mix(static_cast<std::uint64_t>(universe_) + 0x9e3779b97f4a7c15ULL);
  for (auto w : words_) h = mix(h ^ w) + 0x9e3779b97f4a7c15ULL;
  return static_cast<std::size_t>(h);
}

}  // namespace juniper
