#pragma once

// Complex-conjugation operators on Nielsen 4-tuples, real-class tests per
// j-interval, the component walk over the completed j-line, and the
// H-M / near H-M / complement classification of real classes.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "braid.hpp"
#include "nielsen.hpp"
#include "spin.hpp"

namespace bt {

// Number of real branch points; the remaining 4 - r1 form conjugate pairs.
// r1 = 0 or 4 puts j in (1, infinity), r1 = 2 puts j in (-infinity, 1).
enum class KappaVariant { k0, k2, k4 };

inline Tuple khat(const ConcreteGroup& G, const Tuple& t, KappaVariant v) {
  if (t.size() != 4) throw certification_error("khat needs r = 4");
  uint16_t u = G.mul(t[2], t[3]);
  switch (v) {
    case KappaVariant::k0:  // two conjugate pairs (g1,g2), (g3,g4)
      return tuple_kappa0(G, t);
    case KappaVariant::k2:  // g1, g2 real, (g3,g4) a conjugate pair
      return {G.inv(t[0]), G.conj(G.inv(t[1]), u), G.inv(t[3]), G.inv(t[2])};
    case KappaVariant::k4:  // all four real: suffix-conjugated inverses
      return {G.inv(t[0]), G.conj(G.inv(t[1]), u), G.conj(G.inv(t[2]), t[3]), G.inv(t[3])};
  }
  throw certification_error("unknown kappa variant");
}

// Reduced classes fixed by the conjugation operator.  Inputs must be reduced
// canonical forms; certifies the involution and class-multiset invariance of
// khat on every input.  The k0 fixed set is the real fiber over (1, infinity)
// and the k2 fixed set the one over (-infinity, 0) and (0, 1); the k4 fixed
// set singles out the real classes that also have a real representative with
// all four branch points real (all of them at level 0, none at level 1).
inline std::vector<Tuple> real_reduced_classes(const BraidContext& B, const std::vector<Tuple>& reduced,
                                               KappaVariant v) {
  const ConcreteGroup& G = B.group();
  std::vector<Tuple> out;
  for (const Tuple& t : reduced) {
    if (!(B.reduced_canon(t) == t)) throw certification_error("real test input is not a reduced canonical form");
    Tuple k = khat(G, t, v);
    if (!(khat(G, k, v) == t)) throw certification_error("khat is not an involution on a tuple");
    std::multiset<int> ct, ck;
    for (int i = 0; i < 4; ++i) {
      ct.insert(G.class_of(t[i]));
      ck.insert(G.class_of(k[i]));
    }
    if (ct != ck) throw certification_error("khat changed the class multiset");
    if (B.reduced_canon(k) == t) out.push_back(t);
  }
  return out;
}

// All involutions t with t a t = a^{-1} and t b t = b^{-1}.  <a, b> must act
// transitively; solutions form a coset of the (semiregular) centralizer, so
// they are found by propagating each candidate image of point 0.
inline std::vector<Perm> reversing_involutions(const Perm& a, const Perm& b) {
  int n = a.degree();
  if (b.degree() != n) throw certification_error("degree mismatch");
  std::vector<int> parent(n, -1), via(n, 0);
  std::vector<uint16_t> order{0};
  std::vector<char> vis(n, 0);
  vis[0] = 1;
  for (size_t h = 0; h < order.size(); ++h) {
    uint16_t x = order[h];
    for (int g = 0; g < 2; ++g) {
      uint16_t y = g ? b(x) : a(x);
      if (!vis[y]) {
        vis[y] = 1;
        parent[y] = x;
        via[y] = g;
        order.push_back(y);
      }
    }
  }
  if ((int)order.size() != n) throw certification_error("boundary monodromies are not transitive");
  Perm ai = a.inverse(), bi = b.inverse();
  std::vector<Perm> out;
  for (int y0 = 0; y0 < n; ++y0) {
    std::vector<uint16_t> img(n);
    img[0] = (uint16_t)y0;
    for (uint16_t x : order)
      if (x != 0) img[x] = via[x] ? bi(img[parent[x]]) : ai(img[parent[x]]);
    bool ok = true;
    std::vector<char> hit(n, 0);
    for (int x = 0; x < n && ok; ++x) {
      if (hit[img[x]]) ok = false;
      hit[img[x]] = 1;
    }
    for (int x = 0; x < n && ok; ++x) ok = img[a((uint16_t)x)] == ai(img[x]) && img[b((uint16_t)x)] == bi(img[x]);
    if (!ok) continue;
    Perm t = Perm::from_images(img);
    if ((t * t).is_identity()) out.push_back(std::move(t));
  }
  return out;
}

// ---- real locus walk ----
//
// Arcs are (interval, sheet) with intervals 0 = (-inf,0), 1 = (0,1),
// 2 = (1,inf) and sheets the reduced classes of one M-bar_4 orbit.  Per
// interval, complex conjugation acts on the fiber as the involution
// reversing the two boundary monodromies; its fixed sheets are the real
// points there.  The candidate involutions are pinned by matching the fiber
// count from the khat class test.  Arc closures attach at the fibers over
// j = 0, 1, infinity, pairing by the parity of the local orbit length: odd
// crosses to the unique real sheet on the other side inside the same orbit,
// even pairs same-side (the gamma_1 partner, or the cusp antipode).

enum RealBoundary { boundary_zero = 0, boundary_one = 1, boundary_infinity = 2 };

struct RealPairing {
  int interval_a = 0, interval_b = 0;
  Tuple class_a, class_b;  // sheet labels
  int boundary = 0;
};

struct RealLocusReport {
  std::vector<Tuple> plus;       // khat_0-fixed classes: real over (1, infinity)
  std::vector<Tuple> minus;      // khat_2-fixed classes: real over (-infinity, 0) and (0, 1)
  std::vector<Tuple> four_real;  // khat_4-fixed classes (four real branch points)
  std::vector<RealPairing> pairings;
  int arcs = 0;
  int components = 0;
};

inline RealLocusReport real_locus_report(const BraidContext& B, const std::vector<Tuple>& reduced) {
  ReducedAction ra = reduced_action(B, reduced);
  int n = (int)ra.classes.size();

  RealLocusReport rep;
  rep.plus = real_reduced_classes(B, ra.classes, KappaVariant::k0);
  rep.minus = real_reduced_classes(B, ra.classes, KappaVariant::k2);
  rep.four_real = real_reduced_classes(B, ra.classes, KappaVariant::k4);
  if (rep.plus.empty() && rep.minus.empty()) {
    rep.components = 0;
    return rep;
  }

  // fixed sheets of the fiberwise conjugation per interval; candidate
  // involutions are filtered by the class-test count (an empty interval
  // needs no operator).  When the monodromy centralizer leaves several
  // candidates, the walk is run for each combination and all outcomes must
  // agree.
  auto real_sheets = [&](const Perm& u1, const Perm& u2, size_t expected, const char* where) {
    std::vector<std::vector<char>> cands;
    if (expected == 0) {
      cands.emplace_back(n, 0);
      return cands;
    }
    for (Perm& t : reversing_involutions(u1, u2)) {
      if ((size_t)t.n_fixed() != expected) continue;
      std::vector<char> f(n, 0);
      for (int x = 0; x < n; ++x)
        if (t(x) == x) f[x] = 1;
      if (std::find(cands.begin(), cands.end(), f) == cands.end()) cands.push_back(std::move(f));
    }
    if (cands.empty()) throw certification_error(std::string("no conjugation operator over ") + where);
    return cands;
  };
  std::array<std::vector<std::vector<char>>, 3> cand;
  cand[0] = real_sheets(ra.gamma_inf, ra.gamma0, rep.minus.size(), "(-inf,0)");
  cand[1] = real_sheets(ra.gamma0, ra.gamma1, rep.minus.size(), "(0,1)");
  cand[2] = real_sheets(ra.gamma1, ra.gamma_inf, rep.plus.size(), "(1,inf)");
  if (cand[0].size() * cand[1].size() * cand[2].size() > 8)
    throw certification_error("too many conjugation operator candidates");

  // gamma_0 orbits and gamma_inf cusps
  std::vector<int> orbit0_of(n, -1), cusp_of(n, -1), width(n, 0);
  std::vector<std::vector<uint16_t>> orbits0, cusps;
  for (int s = 0; s < n; ++s) {
    if (orbit0_of[s] < 0) {
      std::vector<uint16_t> cyc;
      for (uint16_t x = (uint16_t)s; orbit0_of[x] < 0; x = ra.gamma0(x)) {
        orbit0_of[x] = (int)orbits0.size();
        cyc.push_back(x);
      }
      if (cyc.size() != 1 && cyc.size() != 3) throw certification_error("gamma_0 orbit length is not 1 or 3");
      orbits0.push_back(std::move(cyc));
    }
    if (cusp_of[s] < 0) {
      std::vector<uint16_t> cyc;
      for (uint16_t x = (uint16_t)s; cusp_of[x] < 0; x = ra.gamma_inf(x)) {
        cusp_of[x] = (int)cusps.size();
        cyc.push_back(x);
      }
      for (uint16_t x : cyc) width[x] = (int)cyc.size();
      cusps.push_back(std::move(cyc));
    }
  }

  struct WalkResult {
    int arcs = 0, components = 0;
    std::vector<RealPairing> pairings;
  };
  auto walk = [&](const std::array<const std::vector<char>*, 3>& real_on) {
    std::map<std::pair<int, int>, int> arc_id;  // (interval, sheet) -> arc
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < 3; ++i)
      for (int x = 0; x < n; ++x)
        if ((*real_on[i])[x]) {
          arc_id[{i, x}] = (int)arcs.size();
          arcs.push_back({i, x});
        }
    WalkResult res;
    res.arcs = (int)arcs.size();

    auto cross_unique = [&](const std::vector<uint16_t>& orbit, int other, int boundary) {
      int hits = 0, y = -1;
      for (uint16_t z : orbit)
        if ((*real_on[other])[z]) {
          ++hits;
          y = z;
        }
      if (hits != 1) throw certification_error("odd boundary crossing is not unique");
      return std::pair<int, int>{arc_id.at({other, y}), boundary};
    };

    // partner slot of (arc, boundary)
    auto partner = [&](int arc, int bnd) -> std::pair<int, int> {
      auto [interval, x] = arcs[arc];
      if (bnd == boundary_zero) return cross_unique(orbits0[orbit0_of[x]], interval == 0 ? 1 : 0, bnd);
      if (bnd == boundary_one) {
        int y = ra.gamma1((uint16_t)x);
        int other = interval == 1 ? 2 : 1;
        if (y == x) {
          if (!(*real_on[other])[x]) throw certification_error("real arc dead-ends at j = 1");
          return {arc_id.at({other, x}), bnd};
        }
        if (!(*real_on[interval])[y]) throw certification_error("conjugation-fixed set is not gamma_1 closed");
        return {arc_id.at({interval, y}), bnd};
      }
      int w = width[x];
      if (w % 2) return cross_unique(cusps[cusp_of[x]], interval == 2 ? 0 : 2, bnd);
      int y = x;
      for (int k = 0; k < w / 2; ++k) y = ra.gamma_inf((uint16_t)y);
      if (!(*real_on[interval])[y] || y == x) throw certification_error("even cusp misses its real antipode");
      return {arc_id.at({interval, y}), bnd};
    };

    auto slots_of = [&](int arc) -> std::array<int, 2> {
      switch (arcs[arc].first) {
        case 0: return {boundary_infinity, boundary_zero};
        case 1: return {boundary_zero, boundary_one};
        default: return {boundary_one, boundary_infinity};
      }
    };

    std::map<std::pair<int, int>, std::pair<int, int>> pair_of;
    for (int a = 0; a < (int)arcs.size(); ++a)
      for (int b : slots_of(a)) pair_of[{a, b}] = partner(a, b);
    for (const auto& [slot, p] : pair_of) {
      auto it = pair_of.find(p);
      if (it == pair_of.end() || !(it->second == slot)) throw certification_error("real walk pairing is not symmetric");
      if (p == slot) throw certification_error("real walk paired a slot with itself");
      if (slot < p) {
        RealPairing rp;
        rp.interval_a = arcs[slot.first].first;
        rp.class_a = ra.classes[arcs[slot.first].second];
        rp.interval_b = arcs[p.first].first;
        rp.class_b = ra.classes[arcs[p.first].second];
        rp.boundary = slot.second;
        res.pairings.push_back(std::move(rp));
      }
    }

    // 2-regular pairing graph: components = cycles
    std::vector<char> seen(arcs.size(), 0);
    for (int a = 0; a < (int)arcs.size(); ++a) {
      if (seen[a]) continue;
      ++res.components;
      std::vector<int> stack{a};
      seen[a] = 1;
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int b : slots_of(cur)) {
          int nxt = pair_of.at({cur, b}).first;
          if (!seen[nxt]) {
            seen[nxt] = 1;
            stack.push_back(nxt);
          }
        }
      }
    }
    return res;
  };

  std::optional<WalkResult> first;
  for (const auto& a0 : cand[0])
    for (const auto& a1 : cand[1])
      for (const auto& a2 : cand[2]) {
        WalkResult res = walk({&a0, &a1, &a2});
        if (!first)
          first = std::move(res);
        else if (res.arcs != first->arcs || res.components != first->components)
          throw certification_error("conjugation operator candidates disagree on the real walk");
      }
  rep.arcs = first->arcs;
  rep.components = first->components;
  rep.pairings = std::move(first->pairings);
  return rep;
}

// ---- H-M / near H-M classification of real classes over (1, infinity) ----

enum class RealClassKind { cover_point_all_real, near_hm_no_real_point, complement, other };

inline const char* to_string(RealClassKind k) {
  switch (k) {
    case RealClassKind::cover_point_all_real: return "cover-point-all-real";
    case RealClassKind::near_hm_no_real_point: return "near-HM-no-real-point";
    case RealClassKind::complement: return "complement";
    default: return "other";
  }
}

struct HmRealClassification {
  RealClassKind kind = RealClassKind::other;
  bool conjugator_found = false;
  uint16_t conjugator = 0;  // c with c g c = khat_0(g) pointwise on some class representative
  int conjugator_order = 0;
  long long lift_order = 0;  // spin lift order of the conjugator's embedded image (near H-M)
};

// cls: reduced inner class real over (1, infinity) for khat_0.  embed, when
// given, is the per-element permutation image of a spin-separating coset
// action used to measure the conjugator's lift order.
inline HmRealClassification hm_real_classification(const BraidContext& B, const Tuple& cls,
                                                   const std::vector<Perm>* embed = nullptr) {
  const ConcreteGroup& G = B.group();
  Tuple rc = B.reduced_canon(cls);
  if (!(B.reduced_canon(khat(G, rc, KappaVariant::k0)) == rc))
    throw certification_error("class is not real over (1, infinity)");

  HmRealClassification out;
  auto conj_search = [&](const Tuple& t) -> std::optional<uint16_t> {
    Tuple target = khat(G, t, KappaVariant::k0);
    for (uint32_t c = 0; c < G.order(); ++c) {
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i) ok = G.conj(t[i], (uint16_t)c) == target[i];
      if (ok) return (uint16_t)c;
    }
    return std::nullopt;
  };

  auto [hm, near] = B.reduced_hm_content(rc);
  if (hm && near) throw certification_error("class carries both H-M and near H-M representatives");
  if (hm || near) {
    for (const Tuple& u : B.qpp_orbit(rc)) {
      HmTag tag = B.hm_tag(u);
      if (hm && tag == HmTag::hm) {
        Tuple t = B.canon(u);
        if (!(khat(G, t, KappaVariant::k0) == t))
          throw certification_error("H-M representative is not fixed by khat_0");
        out.kind = RealClassKind::cover_point_all_real;
        out.conjugator_found = true;
        out.conjugator = G.id();
        out.conjugator_order = 1;
        return out;
      }
      if (near && tag == HmTag::near_hm) {
        Tuple t = B.canon(u);
        auto c = hm_conjugating_involution(G, t);
        if (!c) throw certification_error("near H-M class lost its conjugating involution");
        out.kind = RealClassKind::near_hm_no_real_point;
        out.conjugator_found = true;
        out.conjugator = *c;
        out.conjugator_order = G.elt_order(*c);
        if (embed) {
          if (embed->size() != G.order()) throw certification_error("embedding table size mismatch");
          out.lift_order = order_of_lift((*embed)[*c]);
        }
        return out;
      }
    }
    throw certification_error("H-M content did not produce a representative");
  }

  // complement: the cusp antipode carries the H-M or near H-M class
  std::vector<Tuple> cusp{rc};
  for (Tuple cur = rc;;) {
    Tuple nxt = cur;
    tuple_q_apply(G, nxt, 2);
    cur = B.reduced_canon(nxt);
    if (cur == rc) break;
    cusp.push_back(cur);
  }
  if (cusp.size() % 2 == 0) {
    auto [ahm, anear] = B.reduced_hm_content(cusp[cusp.size() / 2]);
    if (ahm || anear) {
      out.kind = RealClassKind::complement;
      for (const Tuple& u : B.qpp_orbit(rc)) {
        if (auto cg = conj_search(B.canon(u))) {
          out.conjugator_found = true;
          out.conjugator = *cg;
          out.conjugator_order = G.elt_order(*cg);
          break;
        }
      }
      return out;
    }
  }
  out.kind = RealClassKind::other;
  return out;
}

}  // namespace bt
