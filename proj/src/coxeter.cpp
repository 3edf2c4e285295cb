#include "cactusj/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <sstream>

namespace cactusj {

void CoxeterMatrix::validate() const {
  if (size <= 0) throw MalformedMatrixFile("Coxeter matrix must have size >= 1");
  if (size > 30)
    throw MalformedMatrixFile("ranks above 30 are not supported (subset masks)");
  if (static_cast<int>(m.size()) != size)
    throw MalformedMatrixFile("Coxeter matrix row count mismatch");
  for (int i = 0; i < size; ++i) {
    if (static_cast<int>(m[i].size()) != size)
      throw MalformedMatrixFile("Coxeter matrix column count mismatch");
    if (m[i][i] != 1) throw MalformedMatrixFile("Coxeter matrix diagonal must be 1");
    for (int j = 0; j < size; ++j) {
      if (i != j) {
        if (m[i][j] < 2)
          throw MalformedMatrixFile("off-diagonal Coxeter entries must be >= 2");
        if (m[i][j] != m[j][i])
          throw MalformedMatrixFile("Coxeter matrix must be symmetric");
      }
    }
  }
}

CoxeterMatrix CoxeterMatrix::direct_sum(const CoxeterMatrix& a, const CoxeterMatrix& b) {
  CoxeterMatrix r;
  r.size = a.size + b.size;
  r.m.assign(r.size, std::vector<int>(r.size, 2));
  for (int i = 0; i < a.size; ++i)
    for (int j = 0; j < a.size; ++j) r.m[i][j] = a.m[i][j];
  for (int i = 0; i < b.size; ++i)
    for (int j = 0; j < b.size; ++j) r.m[a.size + i][a.size + j] = b.m[i][j];
  for (int i = 0; i < r.size; ++i) r.m[i][i] = 1;
  return r;
}

namespace {

CoxeterMatrix chain_matrix(int n) {
  CoxeterMatrix r;
  r.size = n;
  r.m.assign(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) r.m[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) r.m[i][i + 1] = r.m[i + 1][i] = 3;
  return r;
}

unsigned long long factorial(int n) {
  unsigned long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// One irreducible (or I2) factor, e.g. "A3", "I2(7)".
GroupSpec parse_factor(const std::string& s) {
  auto bad = [&]() -> GroupSpec {
    throw UnknownType("unrecognized Coxeter type label: '" + s + "'");
  };
  if (s.size() < 2) return bad();
  char fam = s[0];
  GroupSpec spec;
  spec.label = s;
  if (fam == 'I') {
    // I2(m)
    if (s.size() < 5 || s.substr(0, 3) != "I2(" || s.back() != ')') return bad();
    int m = 0;
    try {
      m = std::stoi(s.substr(3, s.size() - 4));
    } catch (...) {
      return bad();
    }
    if (m < 2) return bad();
    spec.matrix.size = 2;
    spec.matrix.m = {{1, m}, {m, 1}};
    spec.expected_order = 2ULL * m;
    return spec;
  }
  int n = 0;
  try {
    n = std::stoi(s.substr(1));
  } catch (...) {
    return bad();
  }
  switch (fam) {
    case 'A':
      if (n < 1) return bad();
      spec.matrix = chain_matrix(n);
      spec.expected_order = factorial(n + 1);
      return spec;
    case 'B':
      if (n < 2) return bad();
      spec.matrix = chain_matrix(n);
      spec.matrix.m[n - 2][n - 1] = spec.matrix.m[n - 1][n - 2] = 4;
      spec.expected_order = (1ULL << n) * factorial(n);
      return spec;
    case 'D':
      if (n < 2) return bad();
      spec.matrix = chain_matrix(n);
      if (n >= 3) {
        spec.matrix.m[n - 2][n - 1] = spec.matrix.m[n - 1][n - 2] = 2;
        spec.matrix.m[n - 3][n - 1] = spec.matrix.m[n - 1][n - 3] = 3;
      } else {
        spec.matrix.m[0][1] = spec.matrix.m[1][0] = 2;
      }
      spec.expected_order = (1ULL << (n - 1)) * factorial(n);
      return spec;
    case 'F':
      if (n != 4) return bad();
      spec.matrix = chain_matrix(4);
      spec.matrix.m[1][2] = spec.matrix.m[2][1] = 4;
      spec.expected_order = 1152;
      return spec;
    case 'H':
      if (n != 3 && n != 4) return bad();
      spec.matrix = chain_matrix(n);
      spec.matrix.m[0][1] = spec.matrix.m[1][0] = 5;
      spec.expected_order = n == 3 ? 120ULL : 14400ULL;
      return spec;
    default:
      return bad();
  }
}

}  // namespace

GroupSpec parse_group_label(const std::string& label) {
  // Split on 'x' outside parentheses.
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : label) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == 'x' || c == 'X') && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  GroupSpec spec;
  bool first = true;
  for (const auto& p : parts) {
    if (p.empty()) throw UnknownType("empty factor in label '" + label + "'");
    GroupSpec f = parse_factor(p);
    if (first) {
      spec = f;
      first = false;
    } else {
      spec.matrix = CoxeterMatrix::direct_sum(spec.matrix, f.matrix);
      if (spec.expected_order && f.expected_order)
        spec.expected_order = *spec.expected_order * *f.expected_order;
    }
  }
  spec.label = label;
  spec.matrix.validate();
  return spec;
}

// ---------------------------------------------------------------------------
// Coset enumeration.
//
// We enumerate cosets of the trivial subgroup for the Coxeter presentation
// < s_i | s_i^2, (s_i s_j)^{m_ij} >, which yields the right-multiplication
// action of the generators on the elements. Generators are involutions, so
// the edge x*s = y is stored symmetrically. The driver repeats full relator
// scans over all live cosets until a pass completes without defining a coset
// or processing a coincidence; for a finite presented group this terminates
// with the complete Cayley table.
// ---------------------------------------------------------------------------

namespace {

constexpr u32 kUndef = std::numeric_limits<u32>::max();

class CosetTable {
 public:
  CosetTable(const CoxeterMatrix& matrix, std::size_t max_live)
      : matrix_(matrix), ngen_(matrix.size), max_live_(max_live) {
    // The involution relations are also enforced structurally by set_edge;
    // the explicit relators make sure every generator edge gets defined.
    for (int i = 0; i < ngen_; ++i) relators_.push_back({i, i});
    for (int i = 0; i < ngen_; ++i)
      for (int j = i + 1; j < ngen_; ++j) {
        std::vector<int> rel;
        for (int k = 0; k < 2 * matrix.m[i][j]; ++k) rel.push_back(k % 2 ? j : i);
        relators_.push_back(std::move(rel));
      }
    new_coset();  // identity
  }

  void enumerate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (u32 c = 0; c < tab_.size(); ++c) {
        if (!is_live(c)) continue;
        for (const auto& rel : relators_) {
          if (scan_and_fill(c, rel)) changed = true;
          if (!is_live(c)) break;  // merged away mid-scan; survivor rescanned
        }
      }
    }
  }

  u32 live_count() const { return live_; }
  int ngen() const { return ngen_; }

  // Compact live cosets preserving creation order; returns right tables.
  std::vector<std::vector<u32>> compact() const {
    std::vector<u32> newid(tab_.size(), kUndef);
    u32 next = 0;
    for (u32 c = 0; c < tab_.size(); ++c)
      if (is_live(c)) newid[c] = next++;
    std::vector<std::vector<u32>> right(ngen_, std::vector<u32>(next, kUndef));
    for (u32 c = 0; c < tab_.size(); ++c) {
      if (!is_live(c)) continue;
      for (int s = 0; s < ngen_; ++s) {
        u32 t = tab_[c][s];
        if (t == kUndef)
          throw InternalAssertion("coset table incomplete after enumeration");
        right[s][newid[c]] = newid[find(t)];
      }
    }
    return right;
  }

 private:
  const CoxeterMatrix& matrix_;
  int ngen_;
  std::size_t max_live_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<u32>> tab_;  // [coset][gen]
  mutable std::vector<u32> forward_;   // union-find; forward_[c]==c iff live
  u32 live_ = 0;

  bool is_live(u32 c) const { return forward_[c] == c; }

  u32 find(u32 c) const {
    while (forward_[c] != c) {
      forward_[c] = forward_[forward_[c]];
      c = forward_[c];
    }
    return c;
  }

  u32 new_coset() {
    if (live_ + 1 > max_live_)
      throw GroupTooLarge("coset enumeration exceeded max_size=" +
                          std::to_string(max_live_) +
                          " live cosets; group may be infinite or over budget");
    tab_.emplace_back(ngen_, kUndef);
    forward_.push_back(static_cast<u32>(tab_.size()) - 1);
    ++live_;
    return static_cast<u32>(tab_.size()) - 1;
  }

  u32 step(u32 c, int s) const {
    u32 t = tab_[c][s];
    return t == kUndef ? kUndef : find(t);
  }

  void set_edge(u32 a, int s, u32 b) {
    // Involution: a*s = b and b*s = a.
    u32 ea = step(a, s), eb = step(b, s);
    if (ea == kUndef)
      tab_[a][s] = b;
    else if (ea != b)
      return coincidence(ea, b);
    if (eb == kUndef)
      tab_[b][s] = a;
    else if (eb != a)
      coincidence(eb, a);
  }

  void coincidence(u32 a, u32 b) {
    std::deque<std::pair<u32, u32>> queue{{a, b}};
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      x = find(x), y = find(y);
      if (x == y) continue;
      if (y < x) std::swap(x, y);  // keep the smaller id
      forward_[y] = x;
      --live_;
      for (int s = 0; s < ngen_; ++s) {
        u32 t = tab_[y][s];
        if (t == kUndef) continue;
        tab_[y][s] = kUndef;
        u32 u = find(y), v = find(t);
        // edge u*s = v, merged from the dead coset's row
        u32 eu = step(u, s);
        if (eu == kUndef)
          tab_[u][s] = v;
        else if (eu != v)
          queue.emplace_back(eu, v);
        u32 ev = step(v, s);
        if (ev == kUndef)
          tab_[v][s] = u;
        else if (ev != u)
          queue.emplace_back(ev, u);
      }
    }
  }

  // HLT relator scan with gap filling. Returns true if the table changed.
  bool scan_and_fill(u32 alpha, const std::vector<int>& rel) {
    bool changed = false;
    while (true) {
      alpha = find(alpha);
      std::size_t i = 0, j = rel.size();
      u32 f = alpha, b = alpha;
      while (i < j) {
        u32 n = step(f, rel[i]);
        if (n == kUndef) break;
        f = n;
        ++i;
      }
      if (i == j) {
        if (f != alpha) {
          coincidence(f, alpha);
          return true;
        }
        return changed;
      }
      while (j > i + 1) {
        u32 n = step(b, rel[j - 1]);
        if (n == kUndef) break;
        b = n;
        --j;
      }
      if (j == i + 1) {
        set_edge(f, rel[i], b);  // deduction closing the relator
        return true;
      }
      // Fill one gap entry and rescan.
      u32 n = new_coset();
      tab_[f][rel[i]] = n;
      tab_[n][rel[i]] = f;
      changed = true;
    }
  }
};

}  // namespace

CoxGroup CoxGroup::build(const CoxeterMatrix& matrix, std::size_t max_size) {
  matrix.validate();
  CoxGroup g;
  g.matrix_ = matrix;
  const int ngen = matrix.size;

  CosetTable tc(matrix, max_size);
  tc.enumerate();
  std::vector<std::vector<u32>> raw_right = tc.compact();
  const u32 n = tc.live_count();

  // ShortLex BFS from the identity: assigns ids by (length, word), canonical
  // words and lengths. Canonical words are prefix-closed, so taking the first
  // assignment while scanning parents in id order yields the ShortLex-minimal
  // reduced word of every element.
  std::vector<u32> order;  // old ids in BFS order
  std::vector<u32> newid(n, kUndef);
  order.reserve(n);
  order.push_back(0);
  newid[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    u32 x = order[head];
    for (int s = 0; s < ngen; ++s) {
      u32 y = raw_right[s][x];
      if (newid[y] == kUndef) {
        newid[y] = static_cast<u32>(order.size());
        order.push_back(y);
      }
    }
  }
  if (order.size() != n)
    throw InternalAssertion("Cayley graph disconnected after enumeration");

  g.right_.assign(ngen, std::vector<u32>(n));
  for (int s = 0; s < ngen; ++s)
    for (u32 x = 0; x < n; ++x) g.right_[s][newid[x]] = newid[raw_right[s][x]];

  g.length_.assign(n, -1);
  g.word_.assign(n, {});
  g.length_[0] = 0;
  for (u32 x = 0; x < n; ++x) {
    for (int s = 0; s < ngen; ++s) {
      u32 y = g.right_[s][x];
      if (g.length_[y] == -1) {
        g.length_[y] = g.length_[x] + 1;
        g.word_[y] = g.word_[x];
        g.word_[y].push_back(s);
      }
    }
  }

  // Left table along the BFS tree, then inverses (which read arbitrary rows
  // of the finished left table).
  g.left_.assign(ngen, std::vector<u32>(n));
  for (int s = 0; s < ngen; ++s) g.left_[s][0] = g.right_[s][0];
  for (u32 y = 1; y < n; ++y) {
    int t = g.word_[y].back();
    u32 x = g.right_[t][y];  // parent: y = x * t
    for (int s = 0; s < ngen; ++s) g.left_[s][y] = g.right_[t][g.left_[s][x]];
  }
  g.inverse_.assign(n, 0);
  for (u32 y = 1; y < n; ++y) {
    int t = g.word_[y].back();
    u32 x = g.right_[t][y];
    g.inverse_[y] = g.left_[t][g.inverse_[x]];
  }

  for (u32 x = 0; x < n; ++x) {
    u32 ix = g.inverse_[x];
    if (g.length_[ix] != g.length_[x] || g.inverse_[ix] != x)
      throw InternalAssertion("inverse table is not a length-preserving involution");
  }

  g.ldesc_.assign(n, 0);
  g.rdesc_.assign(n, 0);
  for (u32 x = 0; x < n; ++x)
    for (int s = 0; s < ngen; ++s) {
      if (g.length_[g.left_[s][x]] < g.length_[x]) g.ldesc_[x] |= u32{1} << s;
      if (g.length_[g.right_[s][x]] < g.length_[x]) g.rdesc_[x] |= u32{1} << s;
    }

  int maxlen = 0;
  for (u32 x = 0; x < n; ++x) maxlen = std::max(maxlen, g.length_[x]);
  u32 count = 0;
  for (u32 x = 0; x < n; ++x)
    if (g.length_[x] == maxlen) {
      g.longest_ = x;
      ++count;
    }
  if (count != 1)
    throw InternalAssertion("longest element is not unique; group not finite?");

  // Bruhat ideals by the left descent recursion:
  // ideal(s u) = ideal(u) + s * ideal(u) for s u > u.
  g.ideal_.assign(n, Bitset(n));
  g.ideal_[0].set(0);
  for (u32 x = 1; x < n; ++x) {
    int s = g.word_[x].front();
    u32 u = g.left_[s][x];
    g.ideal_[x] = g.ideal_[u];
    Bitset& me = g.ideal_[x];
    g.ideal_[u].for_each([&](std::size_t y) { me.set(g.left_[s][static_cast<u32>(y)]); });
  }

  return g;
}

u32 CoxGroup::mul(u32 a, u32 b) const {
  u32 r = a;
  for (int s : word_[b]) r = right_[s][r];
  return r;
}

u32 CoxGroup::from_word(const std::vector<int>& w) const {
  u32 r = 0;
  for (int s : w) {
    if (s < 0 || s >= matrix_.size) throw NotASubsetOfS("letter out of range");
    r = right_[s][r];
  }
  return r;
}

CoxGroup::ParabolicSet CoxGroup::parabolic(u32 subset_mask) const {
  ParabolicSet ps;
  std::vector<bool> seen(size(), false);
  std::vector<u32> queue{0};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    u32 x = queue[head];
    for (int s = 0; s < rank(); ++s) {
      if (!(subset_mask >> s & 1)) continue;
      u32 y = right_[s][x];
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  ps.elements = std::move(queue);
  int maxlen = -1;
  u32 count = 0;
  for (u32 x : ps.elements)
    if (length_[x] > maxlen) {
      maxlen = length_[x];
      ps.longest = x;
      count = 1;
    } else if (length_[x] == maxlen) {
      ++count;
    }
  if (count != 1)
    throw InternalAssertion("parabolic subgroup has no unique longest element");
  return ps;
}

std::pair<u32, u32> CoxGroup::coset_decompose(u32 subset_mask, u32 w,
                                              bool left_variant) const {
  u32 x = 0, y = w;
  if (left_variant) {
    // Strip left descents within I: w = x * y with y minimal in W_I w.
    while (true) {
      u32 d = ldesc_[y] & subset_mask;
      if (!d) break;
      int s = __builtin_ctz(d);
      x = right_[s][x];
      y = left_[s][y];
    }
  } else {
    // Strip right descents within I: w = y * x with y minimal in w W_I.
    // Stripping s from y = y' s turns w = y x into w = y' (s x).
    while (true) {
      u32 d = rdesc_[y] & subset_mask;
      if (!d) break;
      int s = __builtin_ctz(d);
      y = right_[s][y];
      x = left_[s][x];
    }
  }
  if (length_[w] != length_[x] + length_[y])
    throw InternalAssertion("coset decomposition is not length-additive");
  return {x, y};
}

u32 CoxGroup::conjugate_subset(u32 mask_j, u32 mask_i) const {
  if ((mask_i & mask_j) != mask_i)
    throw NotASubsetOfS("conjugate_subset requires I within J");
  u32 wj = longest_of(mask_j);
  u32 out = 0;
  for (int s = 0; s < rank(); ++s) {
    if (!(mask_i >> s & 1)) continue;
    u32 c = mul(mul(wj, generator(s)), wj);
    if (length_[c] != 1)
      throw NotASubsetOfS("conjugation by w_J left the generator set");
    out |= u32{1} << word_[c][0];
  }
  return out;
}

bool CoxGroup::subset_irreducible(u32 subset_mask) const {
  if (!subset_mask) return false;
  int seed = __builtin_ctz(subset_mask);
  u32 seen = u32{1} << seed;
  std::vector<int> queue{seed};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int i = queue[head];
    for (int j = 0; j < rank(); ++j) {
      if (!(subset_mask >> j & 1) || (seen >> j & 1)) continue;
      if (matrix_.m[i][j] >= 3) {
        seen |= u32{1} << j;
        queue.push_back(j);
      }
    }
  }
  return seen == subset_mask;
}

std::string CoxGroup::word_str(u32 a) const {
  if (a == 0) return "e";
  std::ostringstream os;
  bool first = true;
  for (int s : word_[a]) {
    if (!first) os << " ";
    os << "s" << (s + 1);
    first = false;
  }
  return os.str();
}

CoxGroup build_from_label(const std::string& label, std::size_t max_size) {
  GroupSpec spec = parse_group_label(label);
  CoxGroup g = CoxGroup::build(spec.matrix, max_size);
  if (spec.expected_order && g.size() != *spec.expected_order)
    throw InternalAssertion("group order " + std::to_string(g.size()) +
                            " does not match the closed form for " + label);
  return g;
}

}  // namespace cactusj
