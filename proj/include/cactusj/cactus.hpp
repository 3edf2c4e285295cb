// Words in the involutive generators indexed by generator subsets, their
// image in the group (each letter maps to the longest element of its
// parabolic subgroup), the lifted involutions in the Hecke algebra with
// rational-function coefficients, the morphism f into the asymptotic algebra,
// its specialization at v = 0, and the checker comparing both against the
// predicted signed-permutation formulas.
//
// Each letter is a subset mask over the generator set; the empty subset acts
// as the empty word.

#pragma once

#include <map>
#include <memory>
#include <optional>

#include "cactusj/jring.hpp"

namespace cactusj {

struct CactusWord {
  std::vector<u32> letters;  // nonempty subset masks
};

// Image under the projection sending each letter to w_I.
u32 pi_w(const CoxGroup& W, const CactusWord& word);

// All instances of the three defining relations over subsets of S, as pairs
// of words whose images must agree under any morphism.
struct Relation {
  CactusWord lhs, rhs;
  std::string kind;  // "involution", "product", "nesting"
};
std::vector<Relation> enumerate_relations(const CoxGroup& W);

enum class CosetReading { Right, Left };

// Analysis of one f(gamma_I): localization membership of every coefficient,
// the v = 0 specialization when it exists, and its integrality.
struct FbarReport {
  u32 mask = 0;
  bool pole_free_at_0 = true;  // conjectured (part 1); false is reportable
  bool pole_free_at_1 = true;  // theorem-backed; must hold
  bool integral = true;        // v = 0 values are integers
  Int max_den_content = 1;     // largest integer content over coefficient dens
  std::optional<JElt<Rat>> value;  // f-bar when pole-free at 0
};

struct Conj3Row {
  u32 mask = 0;
  u32 w = 0;
  bool skipped = false;  // no f-bar available (part-1 failure)
  bool left_pass = false, right_pass = false;
  std::string witness;  // populated on failure
};

struct OrbitReport {
  std::vector<int> orbit;  // orbit index per element, numbered by min member
  int n_orbits = 0;
  std::vector<u32> not_signed_perm_masks;  // generators failing part (3)
  // orbit-vs-cell comparison: cells of each kind not contained in one orbit
  std::vector<u32> split_cells_left, split_cells_right, split_cells_two;
};

// Accessors that fill the parabolic/fbar caches are not thread-safe; warm
// the caches sequentially (wtilde, fbar_report, parabolic per subset), after
// which concurrent reads are fine. The CLI's conjecture checker does exactly
// that before fanning out.
class CactusData {
 public:
  CactusData(const CoxGroup& W, const KLData& kl, const Psi& psi);

  const CoxGroup& group() const { return W_; }
  const KLData& kl() const { return kl_; }

  // The unique involutive lift of w_I: computed through the parabolic's own
  // asymptotic data and psi-inversion, then certified against its defining
  // properties (square one, v = 1 specialization, conjugation action).
  // Throws CharacterizationFailed if any certificate fails.
  const HeckeElt<RatFunc>& wtilde(u32 mask);

  // Product of the lifts in the Hecke algebra of W (T-basis).
  HeckeElt<RatFunc> hecke_image(const CactusWord& word);

  // f = psi after the Hecke lift, with rational-function coefficients.
  JElt<RatFunc> f_of(const CactusWord& word);

  // v = 0 specialization of f(gamma_I) with full reporting.
  const FbarReport& fbar_report(u32 mask);

  // Strict variant: integer coefficients or PoleAtZero.
  JElt<Int> fbar_of(const CactusWord& word);

  // Predicted value of f-bar(gamma_I) from the distinguished involutions of
  // the full group and the parabolic sigma.
  JElt<Rat> conjecture2_predicted(u32 mask, CosetReading reading = CosetReading::Right);

  Conj3Row conjecture3_check(u32 mask, u32 w);

  OrbitReport cactus_action_orbits(bool left_side);

  // Parabolic pipeline access (used by checks and exports).
  struct Parabolic {
    u32 mask = 0;
    std::unique_ptr<CoxGroup> owned_group;
    const CoxGroup* group = nullptr;
    std::unique_ptr<KLData> owned_kl;
    const KLData* kl = nullptr;
    std::unique_ptr<Psi> owned_psi;
    const Psi* psi = nullptr;
    std::vector<u32> embed;       // parabolic id -> id in W
    std::vector<int> gens;        // parabolic generator -> generator of W
    SigmaData sigma;              // on parabolic ids
    HeckeElt<RatFunc> wtilde_w;   // T-basis element of H_W
  };
  const Parabolic& parabolic(u32 mask);

  u32 embed_element(const Parabolic& pd, u32 sub_id) const {
    return pd.embed[sub_id];
  }
  u32 restrict_element(const Parabolic& pd, u32 w_id) const;  // pre: in W_I

 private:
  const CoxGroup& W_;
  const KLData& kl_;
  const Psi& psi_;
  std::map<u32, Parabolic> parabolics_;
  std::map<u32, FbarReport> fbar_;

  void verify_wtilde(const Parabolic& pd, const HeckeElt<RatFunc>& sub_t) const;
};

}  // namespace cactusj
