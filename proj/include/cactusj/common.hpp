// Shared aliases and small containers used across the library.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cactusj {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Exact integers and rationals.
using Int = mpz_class;
using Rat = mpq_class;

// gmpxx has no long long constructors; long is 64-bit on every platform we
// target (static_assert keeps us honest).
static_assert(sizeof(long) == 8, "64-bit long required");
inline Int int_of(long long v) { return Int(static_cast<long>(v)); }
inline Rat rat_of(long long v) { return Rat(static_cast<long>(v)); }

// Sparse vector over element ids: sorted by id, no zero entries.
template <class X>
using Sparse = std::vector<std::pair<u32, X>>;

template <class X>
bool sparse_is_normal(const Sparse<X>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].second == X{}) return false;
    if (i > 0 && s[i - 1].first >= s[i].first) return false;
  }
  return true;
}

// Looks up an id in a sorted sparse vector; nullptr if absent.
template <class X>
const X* sparse_get(const Sparse<X>& s, u32 id) {
  std::size_t lo = 0, hi = s.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (s[mid].first < id)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < s.size() && s[lo].first == id) return &s[lo].second;
  return nullptr;
}

// Fixed-size bit set over element ids.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  void set(std::size_t i) { w_[i >> 6] |= u64{1} << (i & 63); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void or_with(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }
  std::size_t size() const { return n_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      u64 x = w_[wi];
      while (x) {
        unsigned b = __builtin_ctzll(x);
        f(wi * 64 + b);
        x &= x - 1;
      }
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<u64> w_;
};

}  // namespace cactusj
