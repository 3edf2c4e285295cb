// Hecke algebra of a finite Coxeter group over Z[v,v^-1], with the
// quadratic relation (T_s - v)(T_s + v^-1) = 0:
//
//   T_s T_w = T_{sw}                      if sw > w
//   T_s T_w = T_{sw} + (v - v^-1) T_w     if sw < w
//
// plus the bar involution, the Kazhdan-Lusztig basis C_w = sum p_{y,w} T_y
// (bar-invariant, p_{w,w} = 1, deg p_{y,w} <= -1 for y < w), the structure
// constants C_w C_w' = sum h_{w,w',w''} C_w'', and everything derived from
// them: a-function, asymptotic structure constants, distinguished
// involutions, cells.
//
// The full h-table is streamed: rows are produced column-family by column
// family and aggregated; they are retained only when |W| is under a
// configurable budget, otherwise later consumers recompute single rows on
// demand through the independent T-basis route.

#pragma once

#include <unordered_map>

#include "cactusj/coxeter.hpp"
#include "cactusj/laurent.hpp"
#include "cactusj/ratfunc.hpp"

namespace cactusj {

enum class Basis { T, C };

template <class C>
struct HeckeElt {
  Basis basis = Basis::T;
  Sparse<C> coef;

  bool operator==(const HeckeElt& o) const {
    return basis == o.basis && coef == o.coef;
  }
};

template <class C>
HeckeElt<C> hecke_unit(u32 w = 0, Basis basis = Basis::T) {
  HeckeElt<C> h;
  h.basis = basis;
  h.coef.emplace_back(w, C(1));
  return h;
}

// Right and left multiplication by the generator basis element T_s.
template <class C>
HeckeElt<C> t_mul_gen(const CoxGroup& W, const HeckeElt<C>& h, int s, bool on_right);

// T-basis product; both factors must be T-basis (InternalAssertion otherwise).
template <class C>
HeckeElt<C> t_mul(const CoxGroup& W, const HeckeElt<C>& a, const HeckeElt<C>& b);

template <class C>
HeckeElt<C> hecke_add(const HeckeElt<C>& a, const HeckeElt<C>& b);

template <class C>
HeckeElt<C> hecke_scale(const HeckeElt<C>& a, const C& c);

// bar(T_w) rows, built by increasing length; used by the bar involution and
// the bar-invariance assertions in the KL recursion.
class BarTable {
 public:
  explicit BarTable(const CoxGroup& W);
  const Sparse<Laurent>& row(u32 w) const { return rows_[w]; }

 private:
  std::vector<Sparse<Laurent>> rows_;
};

// Ring involution: v -> v^-1, T_s -> T_s^-1 (integral T-basis elements).
HeckeElt<Laurent> bar(const CoxGroup& W, const BarTable& bt, const HeckeElt<Laurent>& h);

struct KLOptions {
  std::size_t h_retain_limit = 256;  // retain full h rows when |W| <= limit
  bool check_bar_invariance = true;
};

struct KLData {
  // p[w] lists (y, p_{y,w}); support is contained in the Bruhat ideal of w.
  std::vector<Sparse<Laurent>> p;
  // mu_in[w] lists (z, mu(z,w)) with mu != 0 (coefficient of v^-1 in p_{z,w}).
  std::vector<std::vector<std::pair<u32, long long>>> mu_in;

  std::vector<int> a;      // a(w) = -(min exponent over the h-column of w)
  std::vector<int> delta;  // Delta(z) = -deg p_{1,z}
  std::vector<long long> nz;  // leading integer of p_{1,z} (coefficient at -Delta)
  std::vector<u32> distinguished;  // D = { z : Delta(z) = a(z) }, sorted

  // Cell index per element; cells are numbered by their minimal element.
  std::vector<int> cell_left, cell_right, cell_two;
  int n_cells_left = 0, n_cells_right = 0, n_cells_two = 0;

  // Asymptotic structure constants: jrow(w,w') lists (u, c) with
  // c = coefficient of t_u in t_w t_w', i.e. (v^{a(u)} h_{w,w',u})|_{v=0}.
  // The table indexed the way the h-based definition is usually displayed,
  // gamma_{w,w',w''}, is jrow(w,w') evaluated at u = (w'')^{-1}.
  std::unordered_map<u64, Sparse<long long>> jrows;

  // psi columns: psi(C_w) = sum_y psi_col[w](y) t_y where
  // psi_col[w](y) = sum over distinguished d with a(d) = a(y) of h_{w,d,y}.
  std::vector<Sparse<Laurent>> psi_col;

  bool h_retained = false;
  std::vector<std::vector<Sparse<Laurent>>> h_cols;  // [w'][w] when retained

  static u64 key(u32 w, u32 wp) { return (u64{w} << 32) | wp; }
  const Sparse<long long>* jrow(u32 w, u32 wp) const {
    auto it = jrows.find(key(w, wp));
    return it == jrows.end() ? nullptr : &it->second;
  }
  long long gamma(const CoxGroup& W, u32 w, u32 wp, u32 wpp) const;
};

// Computes the whole package. Throws InternalAssertion if any guarded
// property (bar-invariance, unitriangularity, pole-freeness of the
// asymptotic constants) fails.
KLData kl_compute(const CoxGroup& W, const KLOptions& opt = {});

// Single h row: the C-basis expansion of C_w C_w', as (w'', h_{w,w',w''}).
// Uses the retained table when present, otherwise multiplies in the T-basis
// and converts back (an independent route, also used as a test oracle).
Sparse<Laurent> h_row(const CoxGroup& W, const KLData& kl, u32 w, u32 wp);

// Basis conversions through the unitriangular p-table.
template <class C>
HeckeElt<C> to_c_basis(const CoxGroup& W, const KLData& kl, const HeckeElt<C>& t_elt);
template <class C>
HeckeElt<C> to_t_basis(const CoxGroup& W, const KLData& kl, const HeckeElt<C>& c_elt);

// v = 1 specialization into the group algebra, as (element, value).
Sparse<Rat> specialize_at_one(const HeckeElt<RatFunc>& t_elt);

HeckeElt<RatFunc> to_ratfunc(const HeckeElt<Laurent>& h);

// Elements with rational-function coefficients essentially share one
// denominator, so the heavy operations clear it once, work over Laurent
// coefficients, and renormalize once at the end.
struct ClearedHecke {
  HeckeElt<Laurent> numer;
  Laurent den;
};
ClearedHecke clear_denominators(const HeckeElt<RatFunc>& h);
HeckeElt<RatFunc> over_denominator(const HeckeElt<Laurent>& numer, const Laurent& den);

template <>
HeckeElt<RatFunc> t_mul(const CoxGroup& W, const HeckeElt<RatFunc>& a,
                        const HeckeElt<RatFunc>& b);
template <>
HeckeElt<RatFunc> to_c_basis(const CoxGroup& W, const KLData& kl,
                             const HeckeElt<RatFunc>& t_elt);
template <>
HeckeElt<RatFunc> to_t_basis(const CoxGroup& W, const KLData& kl,
                             const HeckeElt<RatFunc>& c_elt);

}  // namespace cactusj
