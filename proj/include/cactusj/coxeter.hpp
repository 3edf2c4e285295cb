// Finite Coxeter groups from a Coxeter matrix: complete multiplication
// tables, ShortLex-minimal canonical words, lengths, descent sets, parabolic
// subgroups, coset decompositions and Bruhat ideals.
//
// Elements are dense ids ordered by (length, canonical word); id 0 is the
// identity. Everything is immutable after build and safe to share across
// threads.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cactusj/common.hpp"
#include "cactusj/errors.hpp"

namespace cactusj {

struct CoxeterMatrix {
  int size = 0;
  std::vector<std::vector<int>> m;  // symmetric, diagonal 1, off-diagonal >= 2

  void validate() const;  // throws MalformedMatrixFile on bad entries
  // Direct sum; used for product labels like "A2xA1".
  static CoxeterMatrix direct_sum(const CoxeterMatrix& a, const CoxeterMatrix& b);
};

// Recognized type labels: An, Bn, Dn, F4, H3, H4, I2(m) and products joined
// with "x". The closed-form order is carried along as a build-time check.
struct GroupSpec {
  CoxeterMatrix matrix;
  std::optional<unsigned long long> expected_order;
  std::string label;
};
GroupSpec parse_group_label(const std::string& label);  // throws UnknownType

class CoxGroup {
 public:
  // Enumerates the group by coset enumeration over the trivial subgroup and
  // derives canonical data by ShortLex breadth-first search. Throws
  // GroupTooLarge when the enumeration exceeds max_size live cosets.
  static CoxGroup build(const CoxeterMatrix& matrix, std::size_t max_size = 50000);

  u32 size() const { return static_cast<u32>(length_.size()); }
  int rank() const { return matrix_.size; }
  const CoxeterMatrix& matrix() const { return matrix_; }

  u32 identity() const { return 0; }
  u32 generator(int s) const { return right_[s][0]; }
  u32 right(u32 x, int s) const { return right_[s][x]; }  // x * s
  u32 left(int s, u32 x) const { return left_[s][x]; }    // s * x
  u32 mul(u32 a, u32 b) const;
  u32 inverse(u32 a) const { return inverse_[a]; }
  int length(u32 a) const { return length_[a]; }
  const std::vector<int>& word(u32 a) const { return word_[a]; }
  u32 from_word(const std::vector<int>& w) const;

  u32 left_descents(u32 a) const { return ldesc_[a]; }    // bitmask over S
  u32 right_descents(u32 a) const { return rdesc_[a]; }
  u32 descents(u32 a, bool left_side) const {
    return left_side ? ldesc_[a] : rdesc_[a];
  }

  u32 longest() const { return longest_; }  // w_0
  const Bitset& bruhat_ideal(u32 w) const { return ideal_[w]; }
  bool bruhat_leq(u32 y, u32 w) const { return ideal_[w].test(y); }

  // Parabolic subgroup W_I for a generator subset mask.
  struct ParabolicSet {
    std::vector<u32> elements;  // sorted ids
    u32 longest;                // w_I
  };
  ParabolicSet parabolic(u32 subset_mask) const;
  u32 longest_of(u32 subset_mask) const { return parabolic(subset_mask).longest; }

  // Unique length-additive factorizations along W_I:
  //   left variant:  w = x * y, x in W_I, y minimal in W_I w;
  //   right variant: w = y * x, x in W_I, y minimal in w W_I.
  // Returns (x, y).
  std::pair<u32, u32> coset_decompose(u32 subset_mask, u32 w, bool left_variant) const;

  // { w_J s w_J : s in I } for I within J; throws NotASubsetOfS if the
  // conjugate leaves the generator set.
  u32 conjugate_subset(u32 mask_j, u32 mask_i) const;

  bool subset_irreducible(u32 subset_mask) const;  // Coxeter diagram connected

  std::string word_str(u32 a) const;  // "s1 s2 s1", "e" for the identity

 private:
  CoxGroup() = default;

  CoxeterMatrix matrix_;
  std::vector<std::vector<u32>> right_;  // [s][x]
  std::vector<std::vector<u32>> left_;   // [s][x]
  std::vector<u32> inverse_;
  std::vector<int> length_;
  std::vector<std::vector<int>> word_;
  std::vector<u32> ldesc_, rdesc_;
  std::vector<Bitset> ideal_;
  u32 longest_ = 0;
};

// Builds the group from a recognized label, cross-checking the closed-form
// order when one is known.
CoxGroup build_from_label(const std::string& label, std::size_t max_size = 50000);

}  // namespace cactusj
