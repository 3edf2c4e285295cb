// Lusztig's asymptotic algebra: the free Z-module on symbols t_w with the
// multiplication read off from the leading parts of the h-table, the
// homomorphism psi : H_W -> Z[v,v^-1] J_W, its inversion over the field of
// rational functions, the signed involution element of the full group, and
// the permutation sigma it induces on basis labels.

#pragma once

#include "cactusj/hecke.hpp"

namespace cactusj {

template <class S>
struct JElt {
  Sparse<S> coef;
  bool operator==(const JElt& o) const { return coef == o.coef; }
};

template <class S>
JElt<S> j_unit(u32 w) {
  JElt<S> e;
  e.coef.emplace_back(w, S(1));
  return e;
}

template <class S>
JElt<S> j_add(const JElt<S>& a, const JElt<S>& b);

template <class S>
JElt<S> j_mul(const CoxGroup& W, const KLData& kl, const JElt<S>& a, const JElt<S>& b);

// Scalar promotions are one-way and explicit.
JElt<Laurent> to_laurent(const JElt<Int>& a);
JElt<RatFunc> to_ratfunc(const JElt<Int>& a);
JElt<RatFunc> to_ratfunc(const JElt<Laurent>& a);
JElt<Rat> to_rat(const JElt<Int>& a);

// sum of t_d over distinguished d; verifies it is a two-sided identity and
// throws IdentityCheckFailed otherwise (which would falsify Delta = a).
JElt<Int> j_identity(const CoxGroup& W, const KLData& kl);

// Signed sum over distinguished involutions supported on w_0 D. The sign on
// t_{w_0 d} is (-1)^{l(w_0) + l(w_0 d)}; see the sigma checks for the laws
// this element satisfies.
JElt<Int> theorem_element(const CoxGroup& W, const KLData& kl);

// The matrix of psi, its level/block structure, and exact inversion.
class Psi {
 public:
  Psi(const CoxGroup& W, const KLData& kl);  // throws SingularPsi

  template <class S>
  JElt<S> apply(const HeckeElt<S>& c_elt) const;

  // Solves psi(x) = target exactly over the rational-function field and
  // verifies the solution by substitution before returning it.
  HeckeElt<RatFunc> invert(const JElt<RatFunc>& target) const;

 private:
  const CoxGroup& W_;
  const KLData& kl_;
  struct Block {
    std::vector<u32> members;                     // level elements, sorted
    std::vector<std::vector<RatFunc>> inverse;    // inverse of the diagonal block
  };
  std::vector<std::vector<Block>> levels_;  // one list of blocks per a-value
  std::vector<int> level_values_;           // ascending distinct a-values
};

// sigma[w] and sign[w] from multiplying the theorem element against t_w:
//   theorem * t_w = sign[w] * t_{img[w]},  sign[w] = (-1)^{a(w_0 w)}.
// Throws NotMonomial if some product is not a signed basis vector.
struct SigmaData {
  std::vector<u32> img;
  std::vector<int> sign;
};
SigmaData sigma_table(const CoxGroup& W, const KLData& kl);

// Rational-function application clears the common denominator first.
template <>
JElt<RatFunc> Psi::apply(const HeckeElt<RatFunc>& c_elt) const;

}  // namespace cactusj
