// Shared test helpers: a deterministic generator for random algebra values,
// and independent reference implementations (word-problem normal forms via
// braid-move closure, hand-computed micro fixtures) used to cross-check the
// production code paths.

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cactusj/cactus.hpp"
#include "cactusj/coxeter.hpp"
#include "cactusj/laurent.hpp"
#include "cactusj/ratfunc.hpp"

namespace cactusj::testing {

// splitmix64; fixed seeds keep runs reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

inline Laurent random_laurent(Rng& rng, int max_terms = 5, int max_exp = 4,
                              long long max_coeff = 9) {
  Laurent p;
  int nterms = static_cast<int>(rng.below(max_terms + 1));
  for (int i = 0; i < nterms; ++i)
    p += Laurent::monomial(int_of(rng.range(-max_coeff, max_coeff)),
                           static_cast<int>(rng.range(-max_exp, max_exp)));
  return p;
}

inline Laurent random_nonzero_laurent(Rng& rng) {
  while (true) {
    Laurent p = random_laurent(rng);
    if (!p.is_zero()) return p;
  }
}

inline RatFunc random_ratfunc(Rng& rng) {
  return RatFunc(random_laurent(rng, 4, 3, 5), random_nonzero_laurent(rng));
}

// Reference solution of the word problem straight from Tits' theorem: braid
// closure plus cancellation of equal adjacent letters, normal form the
// lexicographically smallest reduced word in the closure. Exponential in the
// worst case; only for cross-checking small groups.
inline std::vector<int> tits_normal_form(const CoxeterMatrix& M, std::vector<int> word) {
  while (true) {
    std::set<std::vector<int>> closure;
    std::vector<std::vector<int>> queue{word};
    closure.insert(word);
    bool cancelled = false;
    while (!queue.empty() && !cancelled) {
      std::vector<int> u = queue.back();
      queue.pop_back();
      for (std::size_t i = 0; i + 1 < u.size() && !cancelled; ++i)
        if (u[i] == u[i + 1]) {
          std::vector<int> shorter(u.begin(), u.begin() + i);
          shorter.insert(shorter.end(), u.begin() + i + 2, u.end());
          word = shorter;
          cancelled = true;
        }
      if (cancelled) break;
      // braid moves at every position
      for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t len = 2; i + len <= u.size(); ++len) {
          int s = u[i], t = u[i + 1];
          if (s == t) break;
          int m = M.m[s][t];
          if (static_cast<int>(len) != m) continue;
          bool alternating = true;
          for (std::size_t k = 0; k < len; ++k)
            if (u[i + k] != (k % 2 ? t : s)) alternating = false;
          if (!alternating) continue;
          std::vector<int> moved = u;
          for (std::size_t k = 0; k < len; ++k) moved[i + k] = (k % 2 ? s : t);
          if (closure.insert(moved).second) queue.push_back(moved);
        }
      }
    }
    if (!cancelled) return *closure.begin();  // lexicographically smallest
  }
}

// Hand-computed two-element-group fixture used as the micro oracle: all of
// its tables were derived by hand from the defining relations.
struct A1Oracle {
  // p_{e,s} = v^-1, mu(e,s) = 1
  Laurent p_es = Laurent::v(-1);
  // h_{s,s,s} = v + v^-1
  Laurent h_sss = Laurent::from_terms({{1, 1}, {-1, 1}});
  // a-values and distinguished involutions
  int a_e = 0, a_s = 1;
  // structure constants: t_e^2 = t_e, t_s^2 = t_s, cross terms vanish
  // theorem element t = t_s - t_e; sigma fixes both labels
  // wtilde_s = (1-v^2)/(1+v^2) + (2v/(1+v^2)) T_s
  RatFunc wt_const{Laurent::from_terms({{0, 1}, {2, -1}}),
                   Laurent::from_terms({{0, 1}, {2, 1}})};
  RatFunc wt_ts{Laurent::from_terms({{1, 2}}),
                Laurent::from_terms({{0, 1}, {2, 1}})};
};

inline CactusWord word_of(std::initializer_list<u32> masks) {
  CactusWord w;
  for (u32 m : masks) w.letters.push_back(m);
  return w;
}

}  // namespace cactusj::testing
