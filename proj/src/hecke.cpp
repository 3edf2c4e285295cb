#include "cactusj/hecke.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace cactusj {

namespace {

template <class C>
C laurent_to(const Laurent& l) {
  if constexpr (std::is_same_v<C, Laurent>)
    return l;
  else
    return C(l);
}

// Reusable scratch for accumulating sparse rows by element id.
template <class C>
class DenseAccum {
 public:
  explicit DenseAccum(std::size_t n) : slot_(n), used_(n, false) {}

  void add(u32 i, const C& val) {
    if (used_[i]) {
      slot_[i] += val;
    } else {
      slot_[i] = val;
      used_[i] = true;
      touched_.push_back(i);
    }
  }

  Sparse<C> freeze() {
    std::sort(touched_.begin(), touched_.end());
    Sparse<C> out;
    out.reserve(touched_.size());
    for (u32 i : touched_) {
      if (!(slot_[i] == C{})) out.emplace_back(i, std::move(slot_[i]));
      slot_[i] = C{};
      used_[i] = false;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<C> slot_;
  std::vector<bool> used_;
  std::vector<u32> touched_;
};

const Laurent& v_minus_vinv() {
  static const Laurent l = Laurent::from_terms({{1, 1}, {-1, -1}});
  return l;
}
const Laurent& vinv_minus_v() {
  static const Laurent l = Laurent::from_terms({{-1, 1}, {1, -1}});
  return l;
}
const Laurent& v_plus_vinv() {
  static const Laurent l = Laurent::from_terms({{1, 1}, {-1, 1}});
  return l;
}

}  // namespace

template <class C>
HeckeElt<C> t_mul_gen(const CoxGroup& W, const HeckeElt<C>& h, int s, bool on_right) {
  if (h.basis != Basis::T)
    throw InternalAssertion("t_mul_gen requires a T-basis element");
  DenseAccum<C> acc(W.size());
  const C vdiff = laurent_to<C>(v_minus_vinv());
  for (const auto& [x, c] : h.coef) {
    u32 y = on_right ? W.right(x, s) : W.left(s, x);
    acc.add(y, c);
    if (W.length(y) < W.length(x)) acc.add(x, c * vdiff);
  }
  HeckeElt<C> out;
  out.basis = Basis::T;
  out.coef = acc.freeze();
  return out;
}

template <class C>
HeckeElt<C> t_mul(const CoxGroup& W, const HeckeElt<C>& a, const HeckeElt<C>& b) {
  if (a.basis != Basis::T || b.basis != Basis::T)
    throw InternalAssertion("t_mul requires T-basis elements");
  DenseAccum<C> acc(W.size());
  for (const auto& [y, cy] : b.coef) {
    HeckeElt<C> cur = a;
    for (int s : W.word(y)) cur = t_mul_gen(W, cur, s, /*on_right=*/true);
    for (const auto& [x, c] : cur.coef) acc.add(x, c * cy);
  }
  HeckeElt<C> out;
  out.basis = Basis::T;
  out.coef = acc.freeze();
  return out;
}

template <class C>
HeckeElt<C> hecke_add(const HeckeElt<C>& a, const HeckeElt<C>& b) {
  if (a.basis != b.basis)
    throw InternalAssertion("hecke_add across bases is forbidden");
  HeckeElt<C> out;
  out.basis = a.basis;
  std::size_t i = 0, j = 0;
  while (i < a.coef.size() || j < b.coef.size()) {
    if (j == b.coef.size() ||
        (i < a.coef.size() && a.coef[i].first < b.coef[j].first)) {
      out.coef.push_back(a.coef[i++]);
    } else if (i == a.coef.size() || b.coef[j].first < a.coef[i].first) {
      out.coef.push_back(b.coef[j++]);
    } else {
      C c = a.coef[i].second + b.coef[j].second;
      if (!(c == C{})) out.coef.emplace_back(a.coef[i].first, std::move(c));
      ++i, ++j;
    }
  }
  return out;
}

template <class C>
HeckeElt<C> hecke_scale(const HeckeElt<C>& a, const C& c) {
  HeckeElt<C> out;
  out.basis = a.basis;
  if (c == C{}) return out;
  for (const auto& [x, q] : a.coef) {
    C p = q * c;
    if (!(p == C{})) out.coef.emplace_back(x, std::move(p));
  }
  return out;
}

BarTable::BarTable(const CoxGroup& W) {
  const u32 n = W.size();
  rows_.resize(n);
  rows_[0].emplace_back(0, Laurent(1));
  DenseAccum<Laurent> acc(n);
  for (u32 y = 1; y < n; ++y) {
    int t = W.word(y).back();
    u32 x = W.right(y, t);  // parent
    // row(y) = row(x) * (T_t + (v^-1 - v))
    for (const auto& [z, c] : rows_[x]) {
      u32 zt = W.right(z, t);
      acc.add(zt, c);
      if (W.length(zt) > W.length(z)) acc.add(z, c * vinv_minus_v());
    }
    rows_[y] = acc.freeze();
  }
}

HeckeElt<Laurent> bar(const CoxGroup& W, const BarTable& bt, const HeckeElt<Laurent>& h) {
  if (h.basis != Basis::T) throw InternalAssertion("bar requires a T-basis element");
  DenseAccum<Laurent> acc(W.size());
  for (const auto& [w, c] : h.coef) {
    Laurent cb = c.bar();
    for (const auto& [y, r] : bt.row(w)) acc.add(y, cb * r);
  }
  HeckeElt<Laurent> out;
  out.basis = Basis::T;
  out.coef = acc.freeze();
  return out;
}

namespace {

// Streams the C-basis expansion of C_w C_w' for every pair, one w' column
// family at a time; rows for fixed w' are produced by the left C_s recursion
//   C_w = C_s C_u - sum_{sz<z} mu(z,u) C_z  with  w = s u, s u > u,
// so only the rows of the current column family are alive at once.
template <class Visit>
void stream_h(const CoxGroup& W, const KLData& kl, Visit&& visit) {
  const u32 n = W.size();
  std::vector<Sparse<Laurent>> rows(n);
  DenseAccum<Laurent> acc(n);
  for (u32 wp = 0; wp < n; ++wp) {
    rows[0].clear();
    rows[0].emplace_back(wp, Laurent(1));
    visit(0, wp, rows[0]);
    for (u32 w = 1; w < n; ++w) {
      int s = __builtin_ctz(W.left_descents(w));
      u32 u = W.left(s, w);
      for (const auto& [x, q] : rows[u]) {
        u32 sx = W.left(s, x);
        if (W.length(sx) < W.length(x)) {
          acc.add(x, q * v_plus_vinv());
        } else {
          acc.add(sx, q);
          for (const auto& [z, mu] : kl.mu_in[x])
            if (W.length(W.left(s, z)) < W.length(z)) acc.add(z, q * Laurent(mu));
        }
      }
      for (const auto& [z, mu] : kl.mu_in[u])
        if (W.length(W.left(s, z)) < W.length(z)) {
          Laurent m(-mu);
          for (const auto& [x, q] : rows[z]) acc.add(x, q * m);
        }
      rows[w] = acc.freeze();
      visit(w, wp, rows[w]);
    }
  }
}

// Iterative Tarjan SCC over a bitset digraph; returns component ids numbered
// by minimal member for determinism, and the component count.
std::pair<std::vector<int>, int> scc_cells(const std::vector<Bitset>& adj) {
  const u32 n = static_cast<u32>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<u32> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<u32, u32>> call;  // (node, next neighbor position)
  std::vector<std::vector<u32>> nbr(n);
  int next_index = 0, ncomp = 0;

  auto discover = [&](u32 x) {
    index[x] = low[x] = next_index++;
    stack.push_back(x);
    on_stack[x] = true;
    nbr[x].clear();
    adj[x].for_each([&](std::size_t y) { nbr[x].push_back(static_cast<u32>(y)); });
    call.emplace_back(x, 0);
  };
  for (u32 root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    discover(root);
    while (!call.empty()) {
      u32 x = call.back().first;
      u32& pos = call.back().second;
      bool descended = false;
      while (pos < nbr[x].size()) {
        u32 y = nbr[x][pos++];
        if (index[y] == -1) {
          discover(y);  // may invalidate pos; we re-enter via the outer loop
          descended = true;
          break;
        }
        if (on_stack[y]) low[x] = std::min(low[x], index[y]);
      }
      if (descended) continue;
      if (low[x] == index[x]) {
        while (true) {
          u32 y = stack.back();
          stack.pop_back();
          on_stack[y] = false;
          comp[y] = ncomp;
          if (y == x) break;
        }
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) {
        u32 parent = call.back().first;
        low[parent] = std::min(low[parent], low[x]);
      }
    }
  }
  // Renumber components by minimal element id.
  std::vector<u32> min_elt(ncomp, n);
  for (u32 x = 0; x < n; ++x)
    min_elt[comp[x]] = std::min(min_elt[comp[x]], x);
  std::vector<int> order(ncomp);
  for (int i = 0; i < ncomp; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return min_elt[a] < min_elt[b]; });
  std::vector<int> rank(ncomp);
  for (int i = 0; i < ncomp; ++i) rank[order[i]] = i;
  for (u32 x = 0; x < n; ++x) comp[x] = rank[comp[x]];
  return {comp, ncomp};
}

}  // namespace

KLData kl_compute(const CoxGroup& W, const KLOptions& opt) {
  const u32 n = W.size();
  KLData kl;
  kl.p.resize(n);
  kl.mu_in.resize(n);
  kl.p[0].emplace_back(0, Laurent(1));

  std::unique_ptr<BarTable> bt;
  if (opt.check_bar_invariance) bt = std::make_unique<BarTable>(W);

  const Laurent vinv = Laurent::v(-1);
  DenseAccum<Laurent> acc(n);
  for (u32 w = 1; w < n; ++w) {
    int s = __builtin_ctz(W.left_descents(w));
    u32 u = W.left(s, w);
    // (T_s + v^-1) C_u
    for (const auto& [y, q] : kl.p[u]) {
      u32 sy = W.left(s, y);
      acc.add(sy, q);
      if (W.length(sy) < W.length(y)) acc.add(y, q * v_minus_vinv());
      acc.add(y, q * vinv);
    }
    // - sum mu(z,u) C_z over z with sz < z
    for (const auto& [z, mu] : kl.mu_in[u]) {
      if (W.length(W.left(s, z)) >= W.length(z)) continue;
      Laurent m(-mu);
      for (const auto& [y, q] : kl.p[z]) acc.add(y, q * m);
    }
    Sparse<Laurent> row = acc.freeze();

    for (const auto& [y, q] : row) {
      if (!W.bruhat_leq(y, w))
        throw InternalAssertion("KL support outside the Bruhat ideal");
      if (y == w) {
        if (!q.is_one()) throw InternalAssertion("p_{w,w} != 1 in KL recursion");
      } else {
        if (!q.deg() || *q.deg() > -1)
          throw InternalAssertion("KL coefficient of T_" + W.word_str(y) +
                                  " in C_" + W.word_str(w) + " has degree >= 0");
        const Int& m = q.coeff(-1);
        if (m != 0) {
          if (!m.fits_slong_p())
            throw InternalAssertion("mu coefficient exceeds machine range");
          kl.mu_in[w].emplace_back(y, m.get_si());
        }
      }
    }
    kl.p[w] = std::move(row);

    if (bt) {
      DenseAccum<Laurent> bacc(n);
      for (const auto& [y, q] : kl.p[w]) {
        Laurent qb = q.bar();
        for (const auto& [z, r] : bt->row(y)) bacc.add(z, qb * r);
      }
      if (bacc.freeze() != kl.p[w])
        throw InternalAssertion("C_" + W.word_str(w) + " is not bar-invariant");
    }
  }
  bt.reset();

  // Pass 1: minimal exponents per column (the a-function), cell preorder
  // edges, and optional retention of the full table.
  kl.h_retained = n <= opt.h_retain_limit;
  if (kl.h_retained) kl.h_cols.assign(n, {});
  std::vector<int> amin(n, 0);
  std::vector<Bitset> adj_left(n, Bitset(n)), adj_right(n, Bitset(n));
  stream_h(W, kl, [&](u32 w, u32 wp, const Sparse<Laurent>& row) {
    for (const auto& [u, h] : row) {
      amin[u] = std::min(amin[u], *h.mindeg());
      adj_left[wp].set(u);
      adj_right[w].set(u);
    }
    if (kl.h_retained) {
      if (kl.h_cols[wp].empty()) kl.h_cols[wp].resize(n);
      kl.h_cols[wp][w] = row;
    }
  });

  kl.a.resize(n);
  for (u32 u = 0; u < n; ++u) kl.a[u] = -amin[u];

  kl.delta.resize(n);
  kl.nz.resize(n);
  for (u32 z = 0; z < n; ++z) {
    if (kl.p[z].front().first != 0)
      throw InternalAssertion("p_{1,z} vanishes; Bruhat ideal broken");
    const Laurent& p1z = kl.p[z].front().second;
    kl.delta[z] = -*p1z.deg();
    const Int& lead = p1z.coeff(*p1z.deg());
    if (!lead.fits_slong_p())
      throw InternalAssertion("leading coefficient of p_{1,z} exceeds machine range");
    kl.nz[z] = lead.get_si();
  }
  for (u32 z = 0; z < n; ++z)
    if (kl.delta[z] == kl.a[z]) {
      if (W.inverse(z) != z)
        throw InternalAssertion("distinguished element is not an involution");
      kl.distinguished.push_back(z);
    }

  auto [cl, nl] = scc_cells(adj_left);
  kl.cell_left = std::move(cl);
  kl.n_cells_left = nl;
  auto [cr, nr] = scc_cells(adj_right);
  kl.cell_right = std::move(cr);
  kl.n_cells_right = nr;
  for (u32 x = 0; x < n; ++x) adj_left[x].or_with(adj_right[x]);
  auto [c2, n2] = scc_cells(adj_left);
  kl.cell_two = std::move(c2);
  kl.n_cells_two = n2;

  // Pass 2: asymptotic structure constants and psi columns.
  std::vector<bool> is_dist(n, false);
  for (u32 d : kl.distinguished) is_dist[d] = true;
  std::vector<std::map<u32, Laurent>> psi_acc(n);
  auto pass2 = [&](u32 w, u32 wp, const Sparse<Laurent>& row) {
    Sparse<long long> jrow;
    for (const auto& [u, h] : row) {
      if (*h.mindeg() < -kl.a[u])
        throw InternalAssertion(
            "h-polynomial exceeds the a-bound; a-function reading falsified");
      const Int& g = h.coeff(-kl.a[u]);
      if (g != 0) {
        if (!g.fits_slong_p())
          throw InternalAssertion("asymptotic constant exceeds machine range");
        jrow.emplace_back(u, g.get_si());
      }
      if (is_dist[wp] && kl.a[u] == kl.a[wp]) {
        auto [it, fresh] = psi_acc[w].try_emplace(u, h);
        if (!fresh) it->second += h;
      }
    }
    if (!jrow.empty()) kl.jrows.emplace(KLData::key(w, wp), std::move(jrow));
  };
  if (kl.h_retained) {
    for (u32 wp = 0; wp < n; ++wp)
      for (u32 w = 0; w < n; ++w) pass2(w, wp, kl.h_cols[wp][w]);
  } else {
    stream_h(W, kl, pass2);
  }

  kl.psi_col.resize(n);
  for (u32 w = 0; w < n; ++w) {
    for (auto& [y, h] : psi_acc[w])
      if (!h.is_zero()) kl.psi_col[w].emplace_back(y, std::move(h));
  }

  return kl;
}

long long KLData::gamma(const CoxGroup& W, u32 w, u32 wp, u32 wpp) const {
  const Sparse<long long>* row = jrow(w, wp);
  if (!row) return 0;
  const long long* c = sparse_get(*row, W.inverse(wpp));
  return c ? *c : 0;
}

Sparse<Laurent> h_row(const CoxGroup& W, const KLData& kl, u32 w, u32 wp) {
  if (kl.h_retained) return kl.h_cols[wp][w];
  HeckeElt<Laurent> a{Basis::T, kl.p[w]}, b{Basis::T, kl.p[wp]};
  HeckeElt<Laurent> prod = t_mul(W, a, b);
  return to_c_basis(W, kl, prod).coef;
}

template <class C>
HeckeElt<C> to_c_basis(const CoxGroup&, const KLData& kl, const HeckeElt<C>& t_elt) {
  if (t_elt.basis != Basis::T)
    throw InternalAssertion("to_c_basis expects a T-basis element");
  std::map<u32, C> cur(t_elt.coef.begin(), t_elt.coef.end());
  Sparse<C> out;
  while (!cur.empty()) {
    auto it = std::prev(cur.end());
    u32 x = it->first;
    C c = it->second;
    cur.erase(it);
    if (c == C{}) continue;
    out.emplace_back(x, c);
    for (const auto& [y, q] : kl.p[x]) {
      if (y == x) continue;
      auto [jt, fresh] = cur.try_emplace(y, C{});
      jt->second = jt->second - c * laurent_to<C>(q);
      if (jt->second == C{}) cur.erase(jt);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  HeckeElt<C> r;
  r.basis = Basis::C;
  r.coef = std::move(out);
  return r;
}

template <class C>
HeckeElt<C> to_t_basis(const CoxGroup& W, const KLData& kl, const HeckeElt<C>& c_elt) {
  if (c_elt.basis != Basis::C)
    throw InternalAssertion("to_t_basis expects a C-basis element");
  DenseAccum<C> acc(W.size());
  for (const auto& [x, c] : c_elt.coef)
    for (const auto& [y, q] : kl.p[x]) acc.add(y, c * laurent_to<C>(q));
  HeckeElt<C> r;
  r.basis = Basis::T;
  r.coef = acc.freeze();
  return r;
}

namespace {

Laurent laurent_lcm(const Laurent& a, const Laurent& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return a * b.divexact(Laurent::gcd(a, b));
}

}  // namespace

ClearedHecke clear_denominators(const HeckeElt<RatFunc>& h) {
  ClearedHecke out;
  out.numer.basis = h.basis;
  out.den = Laurent(1);
  for (const auto& [w, c] : h.coef) out.den = laurent_lcm(out.den, c.den());
  for (const auto& [w, c] : h.coef)
    out.numer.coef.emplace_back(w, c.num() * out.den.divexact(c.den()));
  return out;
}

HeckeElt<RatFunc> over_denominator(const HeckeElt<Laurent>& numer, const Laurent& den) {
  HeckeElt<RatFunc> out;
  out.basis = numer.basis;
  for (const auto& [w, q] : numer.coef) {
    RatFunc c(q, den);
    if (!c.is_zero()) out.coef.emplace_back(w, std::move(c));
  }
  return out;
}

// Specialization: clear denominators, multiply over the Laurent coefficients,
// and renormalize once. This is where products of the lifted involutions are
// computed, and per-coefficient gcd on every intermediate add would dominate.
template <>
HeckeElt<RatFunc> t_mul(const CoxGroup& W, const HeckeElt<RatFunc>& a,
                        const HeckeElt<RatFunc>& b) {
  ClearedHecke ca = clear_denominators(a), cb = clear_denominators(b);
  HeckeElt<Laurent> prod = t_mul(W, ca.numer, cb.numer);
  return over_denominator(prod, ca.den * cb.den);
}

template <>
HeckeElt<RatFunc> to_c_basis(const CoxGroup& W, const KLData& kl,
                             const HeckeElt<RatFunc>& t_elt) {
  ClearedHecke ct = clear_denominators(t_elt);
  HeckeElt<Laurent> c = to_c_basis(W, kl, ct.numer);
  return over_denominator(c, ct.den);
}

template <>
HeckeElt<RatFunc> to_t_basis(const CoxGroup& W, const KLData& kl,
                             const HeckeElt<RatFunc>& c_elt) {
  ClearedHecke cc = clear_denominators(c_elt);
  HeckeElt<Laurent> t = to_t_basis(W, kl, cc.numer);
  return over_denominator(t, cc.den);
}

Sparse<Rat> specialize_at_one(const HeckeElt<RatFunc>& t_elt) {
  Sparse<Rat> out;
  for (const auto& [x, c] : t_elt.coef) {
    Rat val = c.specialize(Rat(1));
    if (val != 0) out.emplace_back(x, val);
  }
  return out;
}

HeckeElt<RatFunc> to_ratfunc(const HeckeElt<Laurent>& h) {
  HeckeElt<RatFunc> r;
  r.basis = h.basis;
  for (const auto& [x, c] : h.coef) r.coef.emplace_back(x, RatFunc(c));
  return r;
}

template HeckeElt<Laurent> t_mul_gen(const CoxGroup&, const HeckeElt<Laurent>&, int, bool);
template HeckeElt<RatFunc> t_mul_gen(const CoxGroup&, const HeckeElt<RatFunc>&, int, bool);
template HeckeElt<Laurent> t_mul(const CoxGroup&, const HeckeElt<Laurent>&, const HeckeElt<Laurent>&);
template HeckeElt<Laurent> hecke_add(const HeckeElt<Laurent>&, const HeckeElt<Laurent>&);
template HeckeElt<RatFunc> hecke_add(const HeckeElt<RatFunc>&, const HeckeElt<RatFunc>&);
template HeckeElt<Laurent> hecke_scale(const HeckeElt<Laurent>&, const Laurent&);
template HeckeElt<RatFunc> hecke_scale(const HeckeElt<RatFunc>&, const RatFunc&);
template HeckeElt<Laurent> to_c_basis(const CoxGroup&, const KLData&, const HeckeElt<Laurent>&);
template HeckeElt<Laurent> to_t_basis(const CoxGroup&, const KLData&, const HeckeElt<Laurent>&);

}  // namespace cactusj
