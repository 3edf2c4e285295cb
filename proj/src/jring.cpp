#include "cactusj/jring.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace cactusj {

template <class S>
JElt<S> j_add(const JElt<S>& a, const JElt<S>& b) {
  JElt<S> out;
  std::size_t i = 0, j = 0;
  while (i < a.coef.size() || j < b.coef.size()) {
    if (j == b.coef.size() ||
        (i < a.coef.size() && a.coef[i].first < b.coef[j].first)) {
      out.coef.push_back(a.coef[i++]);
    } else if (i == a.coef.size() || b.coef[j].first < a.coef[i].first) {
      out.coef.push_back(b.coef[j++]);
    } else {
      S c = a.coef[i].second + b.coef[j].second;
      if (!(c == S{})) out.coef.emplace_back(a.coef[i].first, std::move(c));
      ++i, ++j;
    }
  }
  return out;
}

namespace {
template <class S>
S scalar_of(long long g) {
  if constexpr (std::is_same_v<S, Int>)
    return int_of(g);
  else if constexpr (std::is_same_v<S, Rat>)
    return rat_of(g);
  else
    return S(g);
}
}  // namespace

template <class S>
JElt<S> j_mul(const CoxGroup&, const KLData& kl, const JElt<S>& a, const JElt<S>& b) {
  std::map<u32, S> acc;
  for (const auto& [x, cx] : a.coef) {
    for (const auto& [y, cy] : b.coef) {
      const Sparse<long long>* row = kl.jrow(x, y);
      if (!row) continue;
      S cxy = cx * cy;
      for (const auto& [u, g] : *row) {
        auto [it, fresh] = acc.try_emplace(u, S{});
        it->second += cxy * scalar_of<S>(g);
      }
    }
  }
  JElt<S> out;
  for (auto& [u, c] : acc)
    if (!(c == S{})) out.coef.emplace_back(u, std::move(c));
  return out;
}

JElt<Laurent> to_laurent(const JElt<Int>& a) {
  JElt<Laurent> r;
  for (const auto& [w, c] : a.coef) r.coef.emplace_back(w, Laurent(c));
  return r;
}
JElt<RatFunc> to_ratfunc(const JElt<Int>& a) {
  JElt<RatFunc> r;
  for (const auto& [w, c] : a.coef) r.coef.emplace_back(w, RatFunc(Laurent(c)));
  return r;
}
JElt<RatFunc> to_ratfunc(const JElt<Laurent>& a) {
  JElt<RatFunc> r;
  for (const auto& [w, c] : a.coef) r.coef.emplace_back(w, RatFunc(c));
  return r;
}
JElt<Rat> to_rat(const JElt<Int>& a) {
  JElt<Rat> r;
  for (const auto& [w, c] : a.coef) r.coef.emplace_back(w, Rat(c));
  return r;
}

JElt<Int> j_identity(const CoxGroup& W, const KLData& kl) {
  JElt<Int> one;
  for (u32 d : kl.distinguished) one.coef.emplace_back(d, Int(1));
  for (u32 w = 0; w < W.size(); ++w) {
    JElt<Int> tw = j_unit<Int>(w);
    if (!(j_mul(W, kl, one, tw) == tw) || !(j_mul(W, kl, tw, one) == tw))
      throw IdentityCheckFailed(
          "sum of t_d over computed distinguished involutions is not a "
          "two-sided identity at t_" +
          W.word_str(w));
  }
  return one;
}

JElt<Int> theorem_element(const CoxGroup& W, const KLData& kl) {
  u32 w0 = W.longest();
  std::map<u32, Int> acc;
  for (u32 d : kl.distinguished) {
    u32 u = W.mul(w0, d);
    int exp = W.length(w0) + W.length(u);
    acc[u] = (exp % 2 == 0) ? 1 : -1;
  }
  JElt<Int> t;
  for (const auto& [u, c] : acc) t.coef.emplace_back(u, c);
  return t;
}

// ---------------------------------------------------------------------------
// psi and its inversion.
//
// Entry (y, w) of the matrix is psi_col[w](y); a nonzero entry forces
// a(y) >= a(w), so grouping indices by a-value ascending makes the matrix
// block upper triangular with one square diagonal block per a-level. Each
// level splits further into independent blocks along the connected
// components of its nonzero pattern. Diagonal blocks are inverted once with
// fraction-free forward elimination and exact back-substitution; solves are
// verified by substitution.
// ---------------------------------------------------------------------------

namespace {

// Inverse of a dense Laurent matrix over the rational-function field.
// Fraction-free (Bareiss) forward elimination with full pivoting on the
// sparsest entry, then back-substitution over RatFunc.
std::vector<std::vector<RatFunc>> invert_matrix(std::vector<std::vector<Laurent>> m) {
  const std::size_t k = m.size();
  // Augment with identity.
  std::vector<std::vector<Laurent>> aug(k, std::vector<Laurent>(k));
  for (std::size_t i = 0; i < k; ++i) aug[i][i] = Laurent(1);
  std::vector<std::size_t> colperm(k);
  std::iota(colperm.begin(), colperm.end(), 0);

  Laurent prev_pivot(1);
  for (std::size_t step = 0; step < k; ++step) {
    // Pick the structurally cheapest nonzero pivot in the remaining square.
    std::size_t pr = k, pc = k;
    std::size_t best = SIZE_MAX;
    for (std::size_t i = step; i < k; ++i)
      for (std::size_t j = step; j < k; ++j) {
        if (m[i][j].is_zero()) continue;
        std::size_t sz = m[i][j].term_count();
        if (sz < best) {
          best = sz;
          pr = i;
          pc = j;
        }
      }
    if (pr == k) throw SingularPsi("psi diagonal block is singular");
    std::swap(m[pr], m[step]);
    std::swap(aug[pr], aug[step]);
    if (pc != step) {
      for (std::size_t i = 0; i < k; ++i) std::swap(m[i][pc], m[i][step]);
      std::swap(colperm[pc], colperm[step]);
    }
    const Laurent pivot = m[step][step];
    for (std::size_t i = step + 1; i < k; ++i) {
      if (m[i][step].is_zero()) {
        // still rescale per Bareiss to keep the division exact
        for (std::size_t j = step; j < k; ++j)
          m[i][j] = (pivot * m[i][j]).divexact(prev_pivot);
        for (std::size_t j = 0; j < k; ++j)
          aug[i][j] = (pivot * aug[i][j]).divexact(prev_pivot);
        continue;
      }
      const Laurent head = m[i][step];
      for (std::size_t j = step; j < k; ++j)
        m[i][j] = (pivot * m[i][j] - head * m[step][j]).divexact(prev_pivot);
      for (std::size_t j = 0; j < k; ++j)
        aug[i][j] = (pivot * aug[i][j] - head * aug[step][j]).divexact(prev_pivot);
    }
    prev_pivot = pivot;
  }

  // Back-substitution over RatFunc: solve U x = aug row-wise from the bottom.
  std::vector<std::vector<RatFunc>> x(k, std::vector<RatFunc>(k));
  for (std::size_t ii = k; ii-- > 0;) {
    for (std::size_t j = 0; j < k; ++j) {
      RatFunc acc = RatFunc(aug[ii][j]);
      for (std::size_t l = ii + 1; l < k; ++l)
        acc -= RatFunc(m[ii][l]) * x[l][j];
      x[ii][j] = acc * RatFunc(Laurent(1), m[ii][ii]);
    }
  }
  // Undo the column permutation: row i of the inverse corresponds to the
  // unknown colperm[i].
  std::vector<std::vector<RatFunc>> inv(k, std::vector<RatFunc>(k));
  for (std::size_t i = 0; i < k; ++i) inv[colperm[i]] = std::move(x[i]);
  return inv;
}

}  // namespace

Psi::Psi(const CoxGroup& W, const KLData& kl) : W_(W), kl_(kl) {
  const u32 n = W.size();
  // Pattern sanity: nonzero entries must satisfy a(y) >= a(w).
  for (u32 w = 0; w < n; ++w)
    for (const auto& [y, h] : kl.psi_col[w])
      if (kl.a[y] < kl.a[w])
        throw SingularPsi("psi matrix violates the a-level triangular pattern");

  std::vector<int> values = kl.a;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  level_values_ = values;

  for (int av : level_values_) {
    std::vector<u32> members;
    for (u32 w = 0; w < n; ++w)
      if (kl.a[w] == av) members.push_back(w);
    // Union-find over the level along nonzero entries.
    std::map<u32, u32> parent;
    for (u32 w : members) parent[w] = w;
    std::function<u32(u32)> find = [&](u32 x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (u32 w : members)
      for (const auto& [y, h] : kl_.psi_col[w])
        if (kl.a[y] == av) parent[find(y)] = find(w);
    std::map<u32, std::vector<u32>> groups;
    for (u32 w : members) groups[find(w)].push_back(w);

    std::vector<Block> blocks;
    for (auto& [root, mem] : groups) {
      Block b;
      b.members = std::move(mem);
      std::sort(b.members.begin(), b.members.end());
      const std::size_t k = b.members.size();
      std::vector<std::vector<Laurent>> mat(k, std::vector<Laurent>(k));
      for (std::size_t c = 0; c < k; ++c)
        for (const auto& [y, h] : kl_.psi_col[b.members[c]]) {
          auto it = std::lower_bound(b.members.begin(), b.members.end(), y);
          if (it != b.members.end() && *it == y)
            mat[it - b.members.begin()][c] = h;
        }
      b.inverse = invert_matrix(std::move(mat));
      blocks.push_back(std::move(b));
    }
    levels_.push_back(std::move(blocks));
  }
}

template <class S>
JElt<S> Psi::apply(const HeckeElt<S>& c_elt) const {
  if (c_elt.basis != Basis::C)
    throw InternalAssertion("psi expects a C-basis element");
  std::map<u32, S> acc;
  for (const auto& [w, c] : c_elt.coef)
    for (const auto& [y, h] : kl_.psi_col[w]) {
      auto [it, fresh] = acc.try_emplace(y, S{});
      if constexpr (std::is_same_v<S, Laurent>)
        it->second += c * h;
      else
        it->second += c * S(h);
    }
  JElt<S> out;
  for (auto& [y, c] : acc)
    if (!(c == S{})) out.coef.emplace_back(y, std::move(c));
  return out;
}

template <>
JElt<RatFunc> Psi::apply(const HeckeElt<RatFunc>& c_elt) const {
  if (c_elt.basis != Basis::C)
    throw InternalAssertion("psi expects a C-basis element");
  ClearedHecke cc = clear_denominators(c_elt);
  std::map<u32, Laurent> acc;
  for (const auto& [w, c] : cc.numer.coef)
    for (const auto& [y, h] : kl_.psi_col[w]) acc[y] += c * h;
  JElt<RatFunc> out;
  for (auto& [y, q] : acc) {
    if (q.is_zero()) continue;
    RatFunc c(q, cc.den);
    if (!c.is_zero()) out.coef.emplace_back(y, std::move(c));
  }
  return out;
}

HeckeElt<RatFunc> Psi::invert(const JElt<RatFunc>& target) const {
  const u32 n = W_.size();
  std::vector<RatFunc> residual(n);
  for (const auto& [y, c] : target.coef) residual[y] = c;

  std::vector<RatFunc> solution(n);
  for (std::size_t li = 0; li < levels_.size(); ++li) {
    for (const Block& b : levels_[li]) {
      const std::size_t k = b.members.size();
      std::vector<RatFunc> rhs(k);
      for (std::size_t i = 0; i < k; ++i) rhs[i] = residual[b.members[i]];
      for (std::size_t i = 0; i < k; ++i) {
        RatFunc acc;
        for (std::size_t j = 0; j < k; ++j) {
          if (rhs[j].is_zero()) continue;
          acc += b.inverse[i][j] * rhs[j];
        }
        solution[b.members[i]] = acc;
      }
      // Push the solved columns through the full matrix.
      for (std::size_t i = 0; i < k; ++i) {
        u32 w = b.members[i];
        if (solution[w].is_zero()) continue;
        for (const auto& [y, h] : kl_.psi_col[w]) residual[y] -= solution[w] * RatFunc(h);
      }
    }
  }
  for (u32 y = 0; y < n; ++y)
    if (!residual[y].is_zero())
      throw SingularPsi("psi inversion residual is nonzero at t_" + W_.word_str(y));

  HeckeElt<RatFunc> out;
  out.basis = Basis::C;
  for (u32 w = 0; w < n; ++w)
    if (!solution[w].is_zero()) out.coef.emplace_back(w, std::move(solution[w]));
  return out;
}

SigmaData sigma_table(const CoxGroup& W, const KLData& kl) {
  JElt<Int> t = theorem_element(W, kl);
  const u32 n = W.size(), w0 = W.longest();
  SigmaData sd;
  sd.img.resize(n);
  sd.sign.resize(n);
  for (u32 w = 0; w < n; ++w) {
    JElt<Int> prod = j_mul(W, kl, t, j_unit<Int>(w));
    if (prod.coef.size() != 1 ||
        (prod.coef[0].second != 1 && prod.coef[0].second != -1))
      throw NotMonomial("theorem element times t_" + W.word_str(w) +
                        " is not a signed basis vector");
    sd.img[w] = prod.coef[0].first;
    sd.sign[w] = prod.coef[0].second == 1 ? 1 : -1;
    int expected = kl.a[W.mul(w0, w)] % 2 == 0 ? 1 : -1;
    if (sd.sign[w] != expected)
      throw InternalAssertion("sign of theorem element action at t_" +
                              W.word_str(w) + " is not (-1)^{a(w_0 w)}");
  }
  return sd;
}

template JElt<Int> j_add(const JElt<Int>&, const JElt<Int>&);
template JElt<Rat> j_add(const JElt<Rat>&, const JElt<Rat>&);
template JElt<Laurent> j_add(const JElt<Laurent>&, const JElt<Laurent>&);
template JElt<RatFunc> j_add(const JElt<RatFunc>&, const JElt<RatFunc>&);
template JElt<Int> j_mul(const CoxGroup&, const KLData&, const JElt<Int>&, const JElt<Int>&);
template JElt<Rat> j_mul(const CoxGroup&, const KLData&, const JElt<Rat>&, const JElt<Rat>&);
template JElt<Laurent> j_mul(const CoxGroup&, const KLData&, const JElt<Laurent>&, const JElt<Laurent>&);
template JElt<RatFunc> j_mul(const CoxGroup&, const KLData&, const JElt<RatFunc>&, const JElt<RatFunc>&);
template JElt<Laurent> Psi::apply(const HeckeElt<Laurent>&) const;

}  // namespace cactusj
