#pragma once
// Nielsen class enumeration for (G, C, r): product-one generating tuples with
// prescribed conjugacy classes, up to inner (conjugation by G) or absolute
// (conjugation by a normalizer N' >= G) equivalence, with canonical
// representatives, H-M / near-H-M structure, class-algebra counting, and the
// dihedral reference family.
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <unordered_map>

#include "braidtower/group.hpp"

namespace bt {

using Tuple = std::vector<uint16_t>;

// Conjugation-canonical forms over a fixed ConcreteGroup: conjugate the tuple
// so its first entry is the designated class representative, then take the
// lexicographic minimum over that representative's centralizer.
class NielsenContext {
 public:
  explicit NielsenContext(const ConcreteGroup& G) : G_(&G) {
    uint32_t n = G.order();
    conj_to_rep_.assign(n, 0);
    std::vector<char> seen(n, 0);
    for (size_t c = 0; c < G.classes().size(); ++c) {
      uint16_t rep = G.class_rep((int)c);
      for (uint32_t h = 0; h < n; ++h) {
        uint16_t x = G.conj(rep, (uint16_t)h);
        if (!seen[x]) {
          seen[x] = 1;
          conj_to_rep_[x] = G.inv((uint16_t)h);
        }
      }
      cents_.push_back(G.centralizer(rep));
    }
    for (uint32_t x = 0; x < n; ++x)
      if (G.conj(x, conj_to_rep_[x]) != G.class_rep(G.class_of(x)))
        throw certification_error("conjugator table broken");
  }

  const ConcreteGroup& group() const { return *G_; }

  Tuple conj_tuple(const Tuple& t, uint16_t h) const {
    Tuple r(t.size());
    for (size_t i = 0; i < t.size(); ++i) r[i] = G_->conj(t[i], h);
    return r;
  }

  Tuple canonical_inner(const Tuple& t) const {
    const auto& cent = cents_[G_->class_of(t[0])];
    Tuple base = conj_tuple(t, conj_to_rep_[t[0]]);
    Tuple best = base;
    for (uint16_t z : cent) {
      Tuple cand = conj_tuple(base, z);
      if (cand < best) best = cand;
    }
    return best;
  }

  // outer_maps: element->element tables for automorphisms beyond inner ones
  Tuple canonical_absolute(const Tuple& t, const std::vector<std::vector<uint16_t>>& outer_maps) const {
    Tuple best = canonical_inner(t);
    for (const auto& m : outer_maps) {
      Tuple im(t.size());
      for (size_t i = 0; i < t.size(); ++i) im[i] = m[t[i]];
      Tuple cand = canonical_inner(im);
      if (cand < best) best = cand;
    }
    return best;
  }

  bool product_one(const Tuple& t) const {
    uint16_t p = G_->id();
    for (uint16_t g : t) p = G_->mul(p, g);
    return p == G_->id();
  }

  int mpr(const Tuple& t) const {
    if (t.size() != 4) throw certification_error("middle product needs r = 4");
    return G_->elt_order(G_->mul(t[1], t[2]));
  }

 private:
  const ConcreteGroup* G_;
  std::vector<uint16_t> conj_to_rep_;
  std::vector<std::vector<uint16_t>> cents_;
};

struct NielsenEnumeration {
  std::vector<Tuple> classes;     // canonical tuples, lexicographically sorted
  long long tuples_visited = 0;   // accepted tuples before dedup (g1 pinned)
};

// All inner classes of product-one generating tuples whose entry classes form
// the given multiset.  The first entry is pinned to a class representative per
// distinct arrangement; middle entries are iterated; the last entry is solved.
inline NielsenEnumeration enumerate_nielsen_inner(
    const NielsenContext& ctx, std::vector<int> class_ids,
    const std::function<bool(const Tuple&)>& generates_pred = {}, long long max_elements = 50'000'000,
    int threads = 1) {
  const ConcreteGroup& G = ctx.group();
  size_t r = class_ids.size();
  if (r < 3) throw certification_error("nielsen classes need r >= 3");
  for (int c : class_ids)
    if (c < 0 || c >= (int)G.classes().size()) throw certification_error("class id out of range");

  std::function<bool(const Tuple&)> generates = generates_pred;
  if (!generates) generates = [&G](const Tuple& t) { return G.generates(t); };

  std::sort(class_ids.begin(), class_ids.end());
  std::vector<std::vector<int>> arrangements;
  do arrangements.push_back(class_ids);
  while (std::next_permutation(class_ids.begin(), class_ids.end()));

  long long estimate = 0;
  for (const auto& arr : arrangements) {
    long long per = 1;
    for (size_t i = 1; i + 1 < r; ++i) {
      per *= (long long)G.classes()[arr[i]].size();
      if (per > max_elements) break;
    }
    estimate += per;
    if (estimate > max_elements)
      throw budget_error("nielsen enumeration estimate " + std::to_string(estimate) + " exceeds budget " +
                         std::to_string(max_elements));
  }

  NielsenEnumeration out;
  std::vector<Tuple> found;
  long long visited = 0;
  for (const auto& arr : arrangements) {
    uint16_t g1 = G.class_rep(arr[0]);
    const auto& mid0 = G.classes()[arr[1]];

    auto scan_slice = [&](size_t lo, size_t hi, std::vector<Tuple>& sink, long long& nvis) {
      Tuple t(r);
      t[0] = g1;
      // entries 1..r-2 iterate over their classes; the last entry is solved
      auto rec = [&](auto&& self, size_t depth, uint16_t partial) -> void {
        if (depth == r - 1) {
          uint16_t last = G.inv(partial);
          if (G.class_of(last) != arr[r - 1]) return;
          t[r - 1] = last;
          if (!generates(t)) return;
          ++nvis;
          sink.push_back(ctx.canonical_inner(t));
          return;
        }
        for (uint16_t g : G.classes()[arr[depth]]) {
          t[depth] = g;
          self(self, depth + 1, G.mul(partial, g));
        }
      };
      for (size_t i0 = lo; i0 < hi; ++i0) {
        t[1] = mid0[i0];
        rec(rec, 2, G.mul(g1, mid0[i0]));
      }
    };

    if (threads <= 1 || mid0.size() < 64) {
      scan_slice(0, mid0.size(), found, visited);
    } else {
      size_t nt = std::min<size_t>(threads, mid0.size());
      std::vector<std::vector<Tuple>> sinks(nt);
      std::vector<long long> nvis(nt, 0);
      std::vector<std::thread> pool;
      for (size_t w = 0; w < nt; ++w) {
        size_t lo = mid0.size() * w / nt, hi = mid0.size() * (w + 1) / nt;
        pool.emplace_back([&, w, lo, hi] { scan_slice(lo, hi, sinks[w], nvis[w]); });
      }
      for (auto& th : pool) th.join();
      for (size_t w = 0; w < nt; ++w) {
        found.insert(found.end(), sinks[w].begin(), sinks[w].end());
        visited += nvis[w];
      }
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  out.classes = std::move(found);
  out.tuples_visited = visited;
  return out;
}

inline NielsenEnumeration enumerate_nielsen_absolute(
    const NielsenContext& ctx, const std::vector<int>& class_ids,
    const std::vector<std::vector<uint16_t>>& outer_maps,
    const std::function<bool(const Tuple&)>& generates_pred = {}, long long max_elements = 50'000'000,
    int threads = 1) {
  NielsenEnumeration inner = enumerate_nielsen_inner(ctx, class_ids, generates_pred, max_elements, threads);
  std::vector<Tuple> abs;
  abs.reserve(inner.classes.size());
  for (const auto& t : inner.classes) abs.push_back(ctx.canonical_absolute(t, outer_maps));
  std::sort(abs.begin(), abs.end());
  abs.erase(std::unique(abs.begin(), abs.end()), abs.end());
  inner.classes = std::move(abs);
  return inner;
}

// Conjugation table induced by a permutation normalizing the realized group.
inline std::vector<uint16_t> outer_map_from_perm(const std::vector<Perm>& elems, const Perm& sigma) {
  std::unordered_map<Perm, uint16_t, PermHash> idx;
  for (uint16_t i = 0; i < elems.size(); ++i) idx.emplace(elems[i], i);
  std::vector<uint16_t> table(elems.size());
  for (uint16_t i = 0; i < elems.size(); ++i) {
    auto it = idx.find(conjugate(elems[i], sigma));
    if (it == idx.end()) throw certification_error("map does not normalize the group");
    table[i] = it->second;
  }
  return table;
}

// Nontrivial coset representatives of N_{S_n}(G) modulo G, by scanning S_n.
inline std::vector<Perm> normalizer_outer_reps(const std::vector<Perm>& elems, int degree) {
  if (degree > 6) throw budget_error("normalizer scan limited to degree 6");
  std::set<Perm> members(elems.begin(), elems.end());
  std::set<Perm> coset_mins;
  std::vector<Perm> reps;
  for (const auto& s : sym_enumerate(degree)) {
    bool normalizes = true;
    for (const auto& g : elems)
      if (!members.count(conjugate(g, s))) {
        normalizes = false;
        break;
      }
    if (!normalizes) continue;
    Perm least = s;
    for (const auto& g : elems) least = std::min(least, g * s);
    if (coset_mins.insert(least).second && !members.count(s)) reps.push_back(s);
  }
  return reps;
}

// --- braid generator on tuples (shared with the orbit machinery) ---

// q_i: (g_i, g_{i+1}) -> (g_i g_{i+1} g_i^{-1}, g_i); inverse twists the other way.
inline void tuple_q_apply(const ConcreteGroup& G, Tuple& t, int i, bool inverse = false) {
  if (i < 1 || (size_t)i >= t.size()) throw certification_error("braid index out of range");
  uint16_t a = t[i - 1], b = t[i];
  if (!inverse) {
    t[i - 1] = G.mul(G.mul(a, b), G.inv(a));
    t[i] = a;
  } else {
    t[i - 1] = b;
    t[i] = G.mul(G.mul(G.inv(b), a), b);
  }
}

// Klein-4 generators on 4-tuples (q1 q3^{-1} and the square of the shift).
inline Tuple tuple_qpp1(const ConcreteGroup& G, Tuple t) {
  tuple_q_apply(G, t, 1);
  tuple_q_apply(G, t, 3, true);
  return t;
}

inline Tuple tuple_shift(const ConcreteGroup& G, Tuple t) {
  for (int i = 1; i + 1 <= (int)t.size(); ++i) tuple_q_apply(G, t, i);
  return t;
}

inline Tuple tuple_qpp2(const ConcreteGroup& G, Tuple t) { return tuple_shift(G, tuple_shift(G, std::move(t))); }

// --- H-M structure ---

enum class HmTag { none, hm, near_hm };

inline bool is_hm_shape(const ConcreteGroup& G, const Tuple& t) {
  return t.size() == 4 && t[1] == G.inv(t[0]) && t[3] == G.inv(t[2]);
}

// kappa0(g) = (u^{-1} g2^{-1} u, u^{-1} g1^{-1} u, g4^{-1}, g3^{-1}), u = g3 g4
inline Tuple tuple_kappa0(const ConcreteGroup& G, const Tuple& t) {
  uint16_t u = G.mul(t[2], t[3]);
  return {G.conj(G.inv(t[1]), u), G.conj(G.inv(t[0]), u), G.inv(t[3]), G.inv(t[2])};
}

// involution c with c g c = kappa0(g) pointwise, if one exists
inline std::optional<uint16_t> hm_conjugating_involution(const ConcreteGroup& G, const Tuple& t) {
  Tuple target = tuple_kappa0(G, t);
  for (uint32_t c = 0; c < G.order(); ++c) {
    if (G.elt_order((uint16_t)c) != 2) continue;
    bool ok = true;
    for (size_t i = 0; i < t.size() && ok; ++i) ok = G.conj(t[i], (uint16_t)c) == target[i];
    if (ok) return (uint16_t)c;
  }
  return std::nullopt;
}

inline HmTag hm_structure(const ConcreteGroup& G, const Tuple& t, const ConcreteGroup* quotient = nullptr,
                          const std::vector<uint16_t>* proj = nullptr) {
  if (t.size() != 4) throw certification_error("hm structure needs r = 4");
  if (is_hm_shape(G, t)) return HmTag::hm;
  if (quotient && proj) {
    Tuple pt(4);
    for (int i = 0; i < 4; ++i) pt[i] = (*proj)[t[i]];
    if (is_hm_shape(*quotient, pt) && hm_conjugating_involution(G, t)) return HmTag::near_hm;
  }
  return HmTag::none;
}

// Build a near H-M tuple over the order-5 middle product of (g1, g2):
// c = (g1 g2)^5, result (g1, c^{g2^{-1}} g1^{-1} c^{g2^{-1}}, c g2 c, g2^{-1}).
inline Tuple near_hm_synthesize(const ConcreteGroup& G, uint16_t g1, uint16_t g2, const ConcreteGroup& quotient,
                                const std::vector<uint16_t>& proj) {
  uint16_t prod = G.mul(g1, g2);
  if (quotient.elt_order(proj[prod]) != 5) throw certification_error("near hm synthesis needs image order 5");
  uint16_t c = G.power(prod, 5);
  if (G.elt_order(c) != 2) throw certification_error("near hm conjugator is not an involution");
  uint16_t cg2 = G.conj(c, G.inv(g2));  // g2 c g2^{-1}
  Tuple t = {g1, G.mul(G.mul(cg2, G.inv(g1)), cg2), G.mul(G.mul(c, g2), c), G.inv(g2)};
  uint16_t p = G.id();
  for (uint16_t g : t) p = G.mul(p, g);
  if (p != G.id()) throw certification_error("near hm tuple fails product one");
  Tuple target = tuple_kappa0(G, t);
  for (int i = 0; i < 4; ++i)
    if (G.conj(t[i], c) != target[i]) throw certification_error("near hm tuple fails the conjugation identity");
  return t;
}

// --- class-algebra counting ---

// number of (u_1..u_r), u_i in C_i, with u_1 ... u_r g = 1
inline long long class_product_count(const ConcreteGroup& G, const std::vector<int>& class_ids, uint16_t g) {
  std::vector<long long> f(G.order(), 0), nf(G.order());
  f[G.id()] = 1;
  for (int c : class_ids) {
    std::fill(nf.begin(), nf.end(), 0);
    for (uint32_t t = 0; t < G.order(); ++t) {
      if (!f[t]) continue;
      for (uint16_t u : G.classes()[c]) nf[G.mul((uint16_t)t, u)] += f[t];
    }
    f.swap(nf);
  }
  return f[G.inv(g)];
}

// --- dihedral reference family ---

struct DihedralData {
  ConcreteGroup G;
  std::vector<Perm> perms;                       // index-aligned realization
  std::vector<std::vector<uint16_t>> outer_maps;  // (Z/n)^* / {+-1} beyond 1
  int n = 0;
  int reflection_class = -1;
};

inline DihedralData build_dihedral(int n) {
  if (n < 3 || n % 2 == 0) throw certification_error("dihedral reference needs odd n >= 3");
  std::vector<Perm> elems;
  for (int b = 0; b < n; ++b) {
    std::vector<uint16_t> rot(n), refl(n);
    for (int x = 0; x < n; ++x) {
      rot[x] = (uint16_t)((x + b) % n);
      refl[x] = (uint16_t)(((n - x) + b) % n);
    }
    elems.push_back(Perm::from_images(rot));
    elems.push_back(Perm::from_images(refl));
  }
  std::sort(elems.begin(), elems.end());
  DihedralData d;
  d.n = n;
  d.G = ConcreteGroup::from_perms(elems);
  d.perms = elems;
  for (int a = 2; a <= (n - 1) / 2; ++a) {
    if (std::gcd(a, n) != 1) continue;
    std::vector<uint16_t> img(n);
    for (int x = 0; x < n; ++x) img[x] = (uint16_t)((a * x) % n);
    d.outer_maps.push_back(outer_map_from_perm(elems, Perm::from_images(img)));
  }
  for (uint16_t e = 0; e < d.G.order(); ++e)
    if (d.G.elt_order(e) == 2) {
      d.reflection_class = d.G.class_of(e);
      break;
    }
  return d;
}

struct DihedralReference {
  long long absolute_count = 0;
  long long inner_count = 0;
  std::vector<int> reduced_absolute_widths;  // sorted gamma_infinity orbit widths
};

inline DihedralReference dihedral_reference(int p, int k, long long max_elements = 50'000'000) {
  long long n = 1;
  for (int i = 0; i <= k; ++i) n *= p;
  if (n > 343) throw budget_error("dihedral reference capped at p^{k+1} <= 343");
  DihedralData d = build_dihedral((int)n);
  NielsenContext ctx(d.G);
  std::vector<int> cls(4, d.reflection_class);
  NielsenEnumeration inner = enumerate_nielsen_inner(ctx, cls, {}, max_elements);
  DihedralReference out;
  out.inner_count = (long long)inner.classes.size();

  std::set<Tuple> abs_set;
  for (const auto& t : inner.classes) abs_set.insert(ctx.canonical_absolute(t, d.outer_maps));
  out.absolute_count = (long long)abs_set.size();

  // gamma_infinity = q2 on reduced-absolute classes
  auto reduced_abs = [&](const Tuple& t) {
    Tuple best = ctx.canonical_absolute(t, d.outer_maps);
    for (const Tuple& u : {tuple_qpp1(d.G, t), tuple_qpp2(d.G, t), tuple_qpp1(d.G, tuple_qpp2(d.G, t))})
      best = std::min(best, ctx.canonical_absolute(u, d.outer_maps));
    return best;
  };
  std::set<Tuple> reduced;
  for (const auto& t : abs_set) reduced.insert(reduced_abs(t));
  std::set<Tuple> done;
  for (const auto& t : reduced) {
    if (done.count(t)) continue;
    int width = 0;
    Tuple cur = t;
    do {
      done.insert(cur);
      ++width;
      Tuple next = cur;
      tuple_q_apply(d.G, next, 2);
      cur = reduced_abs(next);
    } while (!(cur == t));
    out.reduced_absolute_widths.push_back(width);
  }
  std::sort(out.reduced_absolute_widths.begin(), out.reduced_absolute_widths.end());
  return out;
}

}  // namespace bt
