#pragma once

// Fixed-width bit vector over the worlds 0..n-1 of one model. All the
// fixpoint machinery is set-algebra over these.

#include <cassert>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace topomu {

class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(int universe) : n_(universe), bits_((universe + 63) / 64, 0) {}

  static WorldSet empty(int universe) { return WorldSet(universe); }

  static WorldSet full(int universe) {
    WorldSet s(universe);
    for (auto& w : s.bits_) w = ~uint64_t{0};
    s.trim();
    return s;
  }

  static WorldSet singleton(int universe, int w) {
    WorldSet s(universe);
    s.add(w);
    return s;
  }

  int universe() const { return n_; }

  bool contains(int w) const {
    assert(w >= 0 && w < n_);
    return (bits_[w >> 6] >> (w & 63)) & 1;
  }

  void add(int w) {
    assert(w >= 0 && w < n_);
    bits_[w >> 6] |= uint64_t{1} << (w & 63);
  }

  void remove(int w) {
    assert(w >= 0 && w < n_);
    bits_[w >> 6] &= ~(uint64_t{1} << (w & 63));
  }

  bool any() const {
    for (auto w : bits_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  int count() const {
    int c = 0;
    for (auto w : bits_) c += __builtin_popcountll(w);
    return c;
  }

  bool intersects(const WorldSet& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & o.bits_[i]) return true;
    return false;
  }

  bool subsetOf(const WorldSet& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~o.bits_[i]) return false;
    return true;
  }

  WorldSet operator|(const WorldSet& o) const {
    WorldSet r = *this;
    r |= o;
    return r;
  }
  WorldSet operator&(const WorldSet& o) const {
    WorldSet r = *this;
    r &= o;
    return r;
  }
  WorldSet operator-(const WorldSet& o) const {
    WorldSet r = *this;
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= ~o.bits_[i];
    return r;
  }
  WorldSet& operator|=(const WorldSet& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  WorldSet& operator&=(const WorldSet& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
  }

  WorldSet complement() const {
    WorldSet r = *this;
    for (auto& w : r.bits_) w = ~w;
    r.trim();
    return r;
  }

  bool operator==(const WorldSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }
  bool operator!=(const WorldSet& o) const { return !(*this == o); }
  bool operator<(const WorldSet& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return bits_ < o.bits_;
  }

  // Least element, or -1 when empty.
  int first() const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) return int(i * 64 + __builtin_ctzll(bits_[i]));
    return -1;
  }

  template <typename Fn>
  void forEach(Fn&& fn) const {
    for (size_t i = 0; i < bits_.size(); ++i) {
      uint64_t w = bits_[i];
      while (w) {
        fn(int(i * 64 + __builtin_ctzll(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> toVector() const {
    std::vector<int> v;
    v.reserve(count());
    forEach([&](int w) { v.push_back(w); });
    return v;
  }

  size_t hash() const {
    size_t h = std::hash<int>{}(n_);
    for (auto w : bits_) h = h * 1099511628211ULL ^ std::hash<uint64_t>{}(w);
    return h;
  }

  std::string toString() const {
    std::string s = "{";
    bool fst = true;
    forEach([&](int w) {
      if (!fst) s += ",";
      s += std::to_string(w);
      fst = false;
    });
    return s + "}";
  }

 private:
  void trim() {
    if (n_ % 64 && !bits_.empty()) bits_.back() &= (uint64_t{1} << (n_ % 64)) - 1;
  }

  int n_ = 0;
  std::vector<uint64_t> bits_;
};

}  // namespace topomu
