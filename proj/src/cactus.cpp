#include "cactusj/cactus.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cactusj {

u32 pi_w(const CoxGroup& W, const CactusWord& word) {
  u32 r = 0;
  for (u32 mask : word.letters) {
    if (!mask) continue;
    r = W.mul(r, W.longest_of(mask));
  }
  return r;
}

std::vector<Relation> enumerate_relations(const CoxGroup& W) {
  const int rank = W.rank();
  const u32 full = (u32{1} << rank) - 1;
  std::vector<Relation> rels;

  // Parabolic orders for the product condition.
  std::vector<u64> order(full + 1, 1);
  for (u32 m = 1; m <= full; ++m) order[m] = W.parabolic(m).elements.size();

  auto commuting = [&](u32 a, u32 b) {
    for (int i = 0; i < rank; ++i) {
      if (!(a >> i & 1)) continue;
      for (int j = 0; j < rank; ++j)
        if ((b >> j & 1) && i != j && W.matrix().m[i][j] != 2) return false;
    }
    return true;
  };

  for (u32 i = 1; i <= full; ++i) {
    rels.push_back({CactusWord{{i, i}}, CactusWord{{}}, "involution"});
  }
  for (u32 i = 1; i <= full; ++i)
    for (u32 j = i + 1; j <= full; ++j) {
      if ((i & j) == 0 && order[i | j] == order[i] * order[j] && commuting(i, j))
        rels.push_back({CactusWord{{i, j}}, CactusWord{{i | j}}, "product"});
    }
  for (u32 j = 1; j <= full; ++j)
    for (u32 i = 1; i < j; ++i) {
      if ((i & j) != i || i == j) continue;
      u32 conj = W.conjugate_subset(j, i);
      rels.push_back({CactusWord{{i, j}}, CactusWord{{j, conj}}, "nesting"});
    }
  return rels;
}

CactusData::CactusData(const CoxGroup& W, const KLData& kl, const Psi& psi)
    : W_(W), kl_(kl), psi_(psi) {}

const CactusData::Parabolic& CactusData::parabolic(u32 mask) {
  auto it = parabolics_.find(mask);
  if (it != parabolics_.end()) return it->second;
  if (!mask) throw InternalAssertion("no parabolic pipeline for the empty subset");

  Parabolic pd;
  pd.mask = mask;
  for (int s = 0; s < W_.rank(); ++s)
    if (mask >> s & 1) pd.gens.push_back(s);

  const u32 full = (u32{1} << W_.rank()) - 1;
  if (mask == full) {
    pd.group = &W_;
    pd.kl = &kl_;
    pd.psi = &psi_;
    pd.embed.resize(W_.size());
    for (u32 x = 0; x < W_.size(); ++x) pd.embed[x] = x;
  } else {
    CoxeterMatrix sub;
    sub.size = static_cast<int>(pd.gens.size());
    sub.m.assign(sub.size, std::vector<int>(sub.size, 2));
    for (int a = 0; a < sub.size; ++a)
      for (int b = 0; b < sub.size; ++b)
        sub.m[a][b] = W_.matrix().m[pd.gens[a]][pd.gens[b]];
    pd.owned_group = std::make_unique<CoxGroup>(CoxGroup::build(sub, W_.size()));
    pd.group = pd.owned_group.get();
    pd.owned_kl = std::make_unique<KLData>(kl_compute(*pd.group));
    pd.kl = pd.owned_kl.get();
    pd.owned_psi = std::make_unique<Psi>(*pd.group, *pd.kl);
    pd.psi = pd.owned_psi.get();
    pd.embed.resize(pd.group->size());
    for (u32 x = 0; x < pd.group->size(); ++x) {
      u32 img = 0;
      for (int s : pd.group->word(x)) img = W_.right(img, pd.gens[s]);
      pd.embed[x] = img;
    }
    // The parabolic inclusion is length-preserving; cheap sanity check.
    for (u32 x = 0; x < pd.group->size(); ++x)
      if (W_.length(pd.embed[x]) != pd.group->length(x))
        throw InternalAssertion("parabolic embedding broke lengths");
  }
  pd.sigma = sigma_table(*pd.group, *pd.kl);

  // wtilde through the parabolic's own asymptotic element and psi-inverse.
  JElt<Int> telt = theorem_element(*pd.group, *pd.kl);
  HeckeElt<RatFunc> c_form = pd.psi->invert(to_ratfunc(telt));
  HeckeElt<RatFunc> t_form = to_t_basis(*pd.group, *pd.kl, c_form);
  verify_wtilde(pd, t_form);

  HeckeElt<RatFunc> emb;
  emb.basis = Basis::T;
  for (const auto& [x, c] : t_form.coef) emb.coef.emplace_back(pd.embed[x], c);
  std::sort(emb.coef.begin(), emb.coef.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  pd.wtilde_w = std::move(emb);

  return parabolics_.emplace(mask, std::move(pd)).first->second;
}

void CactusData::verify_wtilde(const Parabolic& pd, const HeckeElt<RatFunc>& t) const {
  const CoxGroup& G = *pd.group;
  // (1) square one
  HeckeElt<RatFunc> sq = t_mul(G, t, t);
  if (!(sq == hecke_unit<RatFunc>()))
    throw CharacterizationFailed("wtilde square is not the identity");
  // (2) membership at v=1 plus specialization onto the longest element
  for (const auto& [x, c] : t.coef)
    if (!c.member_localized({Rat(1)}))
      throw CharacterizationFailed("wtilde coefficient has a pole at v=1");
  Sparse<Rat> at1 = specialize_at_one(t);
  bool ok = at1.size() == 1 && at1[0].first == G.longest() && at1[0].second == 1;
  if (!ok)
    throw CharacterizationFailed("wtilde at v=1 is not the longest element");
  // (3) conjugation permutes the generators by w_I (square one gives the
  // inverse for free)
  for (int s = 0; s < G.rank(); ++s) {
    HeckeElt<RatFunc> ts = hecke_unit<RatFunc>(G.generator(s));
    HeckeElt<RatFunc> conj = t_mul(G, t_mul(G, t, ts), t);
    u32 target = G.mul(G.mul(G.longest(), G.generator(s)), G.longest());
    if (!(conj == hecke_unit<RatFunc>(target)))
      throw CharacterizationFailed("wtilde conjugation does not permute T_s by w_I");
  }
}

const HeckeElt<RatFunc>& CactusData::wtilde(u32 mask) {
  if (!mask) {
    static const HeckeElt<RatFunc> one = hecke_unit<RatFunc>();
    return one;
  }
  return parabolic(mask).wtilde_w;
}

HeckeElt<RatFunc> CactusData::hecke_image(const CactusWord& word) {
  HeckeElt<RatFunc> acc = hecke_unit<RatFunc>();
  for (u32 mask : word.letters) {
    if (!mask) continue;
    acc = t_mul(W_, acc, wtilde(mask));
  }
  return acc;
}

JElt<RatFunc> CactusData::f_of(const CactusWord& word) {
  HeckeElt<RatFunc> h = hecke_image(word);
  return psi_.apply(to_c_basis(W_, kl_, h));
}

u32 CactusData::restrict_element(const Parabolic& pd, u32 w_id) const {
  u32 r = 0;
  std::vector<int> inv_gen(W_.rank(), -1);
  for (std::size_t k = 0; k < pd.gens.size(); ++k) inv_gen[pd.gens[k]] = static_cast<int>(k);
  for (int s : W_.word(w_id)) {
    if (inv_gen[s] < 0)
      throw InternalAssertion("element does not lie in the parabolic subgroup");
    r = pd.group->right(r, inv_gen[s]);
  }
  return r;
}

const FbarReport& CactusData::fbar_report(u32 mask) {
  auto it = fbar_.find(mask);
  if (it != fbar_.end()) return it->second;

  FbarReport rep;
  rep.mask = mask;
  JElt<RatFunc> f = f_of(CactusWord{{mask}});
  JElt<Rat> val;
  for (const auto& [w, c] : f.coef) {
    if (!c.member_localized({Rat(1)})) rep.pole_free_at_1 = false;
    Int dc = c.den_content();
    if (dc > rep.max_den_content) rep.max_den_content = dc;
    if (!c.member_localized({Rat(0)})) {
      rep.pole_free_at_0 = false;
      continue;
    }
    Rat v0 = c.specialize(Rat(0));
    if (v0 != 0) {
      if (v0.get_den() != 1) rep.integral = false;
      val.coef.emplace_back(w, v0);
    }
  }
  if (!rep.pole_free_at_1)
    throw CharacterizationFailed("f coefficient has a pole at v=1");
  if (rep.pole_free_at_0) rep.value = std::move(val);
  return fbar_.emplace(mask, std::move(rep)).first->second;
}

JElt<Int> CactusData::fbar_of(const CactusWord& word) {
  JElt<RatFunc> f = f_of(word);
  JElt<Int> out;
  for (const auto& [w, c] : f.coef) {
    if (!c.member_localized({Rat(0)}))
      throw PoleAtZero("coefficient of t_" + W_.word_str(w) + " has a pole at v=0");
    Rat v0 = c.specialize(Rat(0));
    if (v0 == 0) continue;
    if (v0.get_den() != 1)
      throw InternalAssertion("v=0 specialization is not an integer at t_" +
                              W_.word_str(w));
    out.coef.emplace_back(w, Int(v0.get_num()));
  }
  return out;
}

JElt<Rat> CactusData::conjecture2_predicted(u32 mask, CosetReading reading) {
  if (!mask) return to_rat(j_identity(W_, kl_));
  const Parabolic& pd = parabolic(mask);
  const CoxGroup& G = *pd.group;
  u32 wI_sub = G.longest();
  std::map<u32, Rat> acc;
  for (u32 d : kl_.distinguished) {
    auto [d1, d2] = W_.coset_decompose(mask, d, reading == CosetReading::Right);
    u32 d1_sub = restrict_element(pd, d1);
    u32 sd1 = pd.sigma.img[d1_sub];
    int av = pd.kl->a[G.mul(wI_sub, d1_sub)];
    Rat sign = (av % 2 == 0) ? 1 : -1;
    u32 u = W_.mul(pd.embed[sd1], d2);
    acc[u] += sign;
  }
  JElt<Rat> out;
  for (const auto& [u, c] : acc)
    if (c != 0) out.coef.emplace_back(u, c);
  return out;
}

Conj3Row CactusData::conjecture3_check(u32 mask, u32 w) {
  Conj3Row row;
  row.mask = mask;
  row.w = w;
  if (!mask) {
    row.left_pass = row.right_pass = true;
    return row;
  }
  const FbarReport& rep = fbar_report(mask);
  if (!rep.value) {
    row.skipped = true;
    row.witness = "no v=0 specialization (part-1 failure)";
    return row;
  }
  const Parabolic& pd = parabolic(mask);
  const CoxGroup& G = *pd.group;
  const JElt<Rat>& fb = *rep.value;

  auto predicted = [&](u32 x, u32 y, bool right_display) -> std::pair<Rat, u32> {
    u32 x_sub = restrict_element(pd, x);
    int av = pd.kl->a[G.mul(G.longest(), x_sub)];
    Rat sign = (av % 2 == 0) ? 1 : -1;
    u32 sx = pd.embed[pd.sigma.img[x_sub]];
    u32 wI = pd.embed[G.longest()];
    u32 u = right_display ? W_.mul(W_.mul(y, wI), W_.mul(sx, wI)) : W_.mul(sx, y);
    return {sign, u};
  };

  {  // left display: f-bar(gamma_I) t_w with w = x y, y minimal in W_I w
    auto [x, y] = W_.coset_decompose(mask, w, /*left_variant=*/true);
    auto [sign, u] = predicted(x, y, /*right_display=*/false);
    JElt<Rat> lhs = j_mul(W_, kl_, fb, j_unit<Rat>(w));
    JElt<Rat> rhs;
    rhs.coef.emplace_back(u, sign);
    row.left_pass = lhs == rhs;
    if (!row.left_pass) {
      std::ostringstream os;
      os << "left: got ";
      for (const auto& [uu, c] : lhs.coef)
        os << c.get_str() << "*t[" << W_.word_str(uu) << "] ";
      os << "expected " << sign.get_str() << "*t[" << W_.word_str(u) << "]";
      row.witness += os.str();
    }
  }
  {  // right display: t_w f-bar(gamma_I) with w = y x, y minimal in w W_I
    auto [x, y] = W_.coset_decompose(mask, w, /*left_variant=*/false);
    auto [sign, u] = predicted(x, y, /*right_display=*/true);
    JElt<Rat> lhs = j_mul(W_, kl_, j_unit<Rat>(w), fb);
    JElt<Rat> rhs;
    rhs.coef.emplace_back(u, sign);
    row.right_pass = lhs == rhs;
    if (!row.right_pass) {
      std::ostringstream os;
      os << (row.witness.empty() ? "" : "; ") << "right: got ";
      for (const auto& [uu, c] : lhs.coef)
        os << c.get_str() << "*t[" << W_.word_str(uu) << "] ";
      os << "expected " << sign.get_str() << "*t[" << W_.word_str(u) << "]";
      row.witness += os.str();
    }
  }
  return row;
}

OrbitReport CactusData::cactus_action_orbits(bool left_side) {
  const u32 n = W_.size();
  OrbitReport rep;
  std::vector<u32> parent(n);
  for (u32 i = 0; i < n; ++i) parent[i] = i;
  std::function<u32(u32)> find = [&](u32 x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  const u32 full = (u32{1} << W_.rank()) - 1;
  for (u32 mask = 1; mask <= full; ++mask) {
    if (!W_.subset_irreducible(mask)) continue;
    const FbarReport& fr = fbar_report(mask);
    if (!fr.value) {
      rep.not_signed_perm_masks.push_back(mask);
      continue;
    }
    bool signed_perm = true;
    std::vector<std::pair<u32, u32>> pairs;
    for (u32 w = 0; w < n && signed_perm; ++w) {
      JElt<Rat> prod = left_side ? j_mul(W_, kl_, *fr.value, j_unit<Rat>(w))
                                 : j_mul(W_, kl_, j_unit<Rat>(w), *fr.value);
      if (prod.coef.size() != 1 ||
          (prod.coef[0].second != 1 && prod.coef[0].second != -1)) {
        signed_perm = false;
        break;
      }
      pairs.emplace_back(w, prod.coef[0].first);
    }
    if (!signed_perm) {
      rep.not_signed_perm_masks.push_back(mask);
      continue;
    }
    for (auto [w, u] : pairs) parent[find(w)] = find(u);
  }

  // Number orbits by minimal member.
  std::vector<int> orbit_of(n, -1);
  rep.orbit.assign(n, -1);
  int next = 0;
  for (u32 w = 0; w < n; ++w) {
    u32 r = find(w);
    if (orbit_of[r] == -1) orbit_of[r] = next++;
    rep.orbit[w] = orbit_of[r];
  }
  rep.n_orbits = next;

  auto compare = [&](const std::vector<int>& cell, int ncells, std::vector<u32>* out) {
    for (int c = 0; c < ncells; ++c) {
      int seen = -1;
      bool split = false;
      for (u32 w = 0; w < n; ++w) {
        if (cell[w] != c) continue;
        if (seen == -1)
          seen = rep.orbit[w];
        else if (rep.orbit[w] != seen)
          split = true;
      }
      if (split) out->push_back(static_cast<u32>(c));
    }
  };
  compare(kl_.cell_left, kl_.n_cells_left, &rep.split_cells_left);
  compare(kl_.cell_right, kl_.n_cells_right, &rep.split_cells_right);
  compare(kl_.cell_two, kl_.n_cells_two, &rep.split_cells_two);
  return rep;
}

}  // namespace cactusj
