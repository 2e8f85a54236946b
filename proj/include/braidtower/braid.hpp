#pragma once
// Braid action on Nielsen tuples: braid words, the Klein-4 subgroup Q''
// (q1 q3^{-1} and the squared shift), reduced classes, orbits of
// M-bar_4 = <gamma_0, gamma_1, gamma_infinity>, cusp (gamma_infinity) orbits
// with (mpr, width) labels, sh-incidence matrices, orbit shortening, and the
// closed-form q2 orbit-length prediction.
#include "braidtower/nielsen.hpp"

namespace bt {

// word letters: +i applies q_i, -i applies q_i^{-1}
inline Tuple braid_apply(const ConcreteGroup& G, Tuple t, const std::vector<int>& word) {
  for (int q : word) {
    if (q == 0) throw certification_error("braid letter 0");
    tuple_q_apply(G, t, std::abs(q), q < 0);
  }
  return t;
}

// shift sh_r = q_1 ... q_{r-1}; for r = 4 this is the shift entering gamma_1
inline std::vector<int> shift_word(int r) {
  std::vector<int> w;
  for (int i = 1; i < r; ++i) w.push_back(i);
  return w;
}

// Bundles an equivalence (inner, or absolute via outer maps) with the r = 4
// reduction by Q''.  For r != 4 the reduction is trivial on classes, so
// reduced_canon falls back to the plain canonical form.
class BraidContext {
 public:
  explicit BraidContext(const NielsenContext& ctx, std::vector<std::vector<uint16_t>> outer_maps = {},
                        const ConcreteGroup* quotient = nullptr, const std::vector<uint16_t>* proj = nullptr)
      : ctx_(&ctx), outer_(std::move(outer_maps)), quotient_(quotient), proj_(proj) {}

  const NielsenContext& nielsen() const { return *ctx_; }
  const ConcreteGroup& group() const { return ctx_->group(); }

  Tuple canon(const Tuple& t) const {
    return outer_.empty() ? ctx_->canonical_inner(t) : ctx_->canonical_absolute(t, outer_);
  }

  Tuple reduced_canon(const Tuple& t) const {
    Tuple best = canon(t);
    if (t.size() != 4) return best;
    const ConcreteGroup& G = ctx_->group();
    for (const Tuple& u : {tuple_qpp1(G, t), tuple_qpp2(G, t), tuple_qpp1(G, tuple_qpp2(G, t))})
      best = std::min(best, canon(u));
    return best;
  }

  // Distinct classes in the Q'' orbit of the class of t (size 1, 2 or 4).
  // Certifies that z = (q1 q3^{-1})^2 fixes the class of t.
  std::vector<Tuple> qpp_orbit(const Tuple& t) const {
    if (t.size() != 4) throw certification_error("Q'' needs r = 4");
    const ConcreteGroup& G = ctx_->group();
    if (!(canon(tuple_qpp1(G, tuple_qpp1(G, t))) == canon(t)))
      throw certification_error("(q1 q3^{-1})^2 moved a class");
    std::set<Tuple> orb{canon(t)};
    orb.insert(canon(tuple_qpp1(G, t)));
    orb.insert(canon(tuple_qpp2(G, t)));
    orb.insert(canon(tuple_qpp1(G, tuple_qpp2(G, t))));
    return {orb.begin(), orb.end()};
  }

  HmTag hm_tag(const Tuple& t) const { return hm_structure(ctx_->group(), canon(t), quotient_, proj_); }

  // H-M / near H-M content of the reduced class of t, scanning its Q'' orbit
  std::pair<bool, bool> reduced_hm_content(const Tuple& t) const {
    bool hm = false, near = false;
    for (const Tuple& u : qpp_orbit(t)) {
      HmTag tag = hm_tag(u);
      hm |= tag == HmTag::hm;
      near |= tag == HmTag::near_hm;
    }
    return {hm, near};
  }

 private:
  const NielsenContext* ctx_;
  std::vector<std::vector<uint16_t>> outer_;
  const ConcreteGroup* quotient_;
  const std::vector<uint16_t>* proj_;
};

inline std::vector<Tuple> reduced_classes(const BraidContext& B, const std::vector<Tuple>& classes) {
  std::set<Tuple> out;
  for (const auto& t : classes) out.insert(B.reduced_canon(t));
  return {out.begin(), out.end()};
}

// H_4 (or H_r) orbit on plain classes under q_1..q_{r-1}
inline std::vector<Tuple> braid_orbit(const BraidContext& B, const Tuple& seed) {
  const ConcreteGroup& G = B.group();
  int r = (int)seed.size();
  std::set<Tuple> seen{B.canon(seed)};
  std::vector<Tuple> stack{B.canon(seed)};
  while (!stack.empty()) {
    Tuple cur = stack.back();
    stack.pop_back();
    for (int i = 1; i < r; ++i) {
      Tuple nxt = cur;
      tuple_q_apply(G, nxt, i);
      nxt = B.canon(nxt);
      if (seen.insert(nxt).second) stack.push_back(nxt);
    }
  }
  return {seen.begin(), seen.end()};
}

// Orbits of M-bar_4 = <gamma_infinity, sh> on reduced classes
inline std::vector<std::vector<Tuple>> mbar4_orbits(const BraidContext& B, const std::vector<Tuple>& reduced) {
  const ConcreteGroup& G = B.group();
  std::set<Tuple> pending(reduced.begin(), reduced.end());
  std::vector<std::vector<Tuple>> orbits;
  while (!pending.empty()) {
    Tuple seed = *pending.begin();
    std::set<Tuple> orb{seed};
    std::vector<Tuple> stack{seed};
    while (!stack.empty()) {
      Tuple cur = stack.back();
      stack.pop_back();
      Tuple a = cur;
      tuple_q_apply(G, a, 2);
      for (Tuple nxt : {B.reduced_canon(a), B.reduced_canon(braid_apply(G, cur, shift_word((int)cur.size())))})
        if (orb.insert(nxt).second) stack.push_back(nxt);
    }
    for (const auto& t : orb) {
      if (!pending.erase(t)) throw certification_error("M-bar_4 orbit left the reduced class list");
    }
    orbits.emplace_back(orb.begin(), orb.end());
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  return orbits;
}

// ---- cusps ----

struct CuspOrbit {
  std::vector<Tuple> classes;  // successive gamma_infinity twists from the lex-min class
  int width = 0;               // classes.size()
  int mpr = 0;                 // ord(g2 g3), constant on the orbit (certified)
  bool has_hm = false;
  bool has_near_hm = false;
};

inline std::vector<CuspOrbit> cusp_orbits(const BraidContext& B, const std::vector<Tuple>& orbit) {
  const ConcreteGroup& G = B.group();
  std::set<Tuple> pending(orbit.begin(), orbit.end());
  std::vector<CuspOrbit> cusps;
  while (!pending.empty()) {
    Tuple seed = *pending.begin();
    CuspOrbit c;
    Tuple cur = seed;
    bool r4 = seed.size() == 4;
    do {
      if (!pending.erase(cur)) throw certification_error("gamma_infinity orbit left the M-bar_4 orbit");
      c.classes.push_back(cur);
      if (r4) {
        auto [hm, near] = B.reduced_hm_content(cur);
        c.has_hm |= hm;
        c.has_near_hm |= near;
      }
      Tuple nxt = cur;
      tuple_q_apply(G, nxt, 2);
      cur = B.reduced_canon(nxt);
    } while (!(cur == seed));
    c.width = (int)c.classes.size();
    auto mid_order = [&](const Tuple& t) { return (int)G.elt_order(G.mul(t[1], t[2])); };
    c.mpr = mid_order(c.classes[0]);
    for (const auto& t : c.classes)
      if (mid_order(t) != c.mpr) throw certification_error("middle product not constant on cusp");
    cusps.push_back(std::move(c));
  }
  std::sort(cusps.begin(), cusps.end(), [](const CuspOrbit& a, const CuspOrbit& b) {
    if (a.mpr != b.mpr) return a.mpr < b.mpr;
    if (a.width != b.width) return a.width < b.width;
    return a.classes[0] < b.classes[0];
  });
  return cusps;
}

// (x) gamma_infinity^{width/2}: the antipode in an even-width cusp
inline Tuple cusp_complement(const BraidContext& B, const CuspOrbit& c, const Tuple& x) {
  if (c.width % 2) throw certification_error("complement needs even width");
  auto it = std::find(c.classes.begin(), c.classes.end(), x);
  if (it == c.classes.end()) throw certification_error("class not in cusp");
  size_t at = (size_t)(it - c.classes.begin());
  return c.classes[(at + c.width / 2) % c.width];
}

// ---- sh-incidence ----

struct ShIncidence {
  std::vector<CuspOrbit> cusps;            // concatenated per M-bar_4 orbit
  std::vector<int> block_of;               // M-bar_4 orbit index of each cusp
  std::vector<std::vector<int>> matrix;    // [i][j] = |(O_i)sh  intersect  O_j|
};

inline ShIncidence sh_incidence(const BraidContext& B, const std::vector<std::vector<Tuple>>& orbits) {
  const ConcreteGroup& G = B.group();
  ShIncidence out;
  for (size_t b = 0; b < orbits.size(); ++b)
    for (auto& c : cusp_orbits(B, orbits[b])) {
      out.cusps.push_back(std::move(c));
      out.block_of.push_back((int)b);
    }
  size_t n = out.cusps.size();
  std::map<Tuple, int> cusp_of;
  for (size_t i = 0; i < n; ++i)
    for (const auto& t : out.cusps[i].classes) cusp_of[t] = (int)i;
  out.matrix.assign(n, std::vector<int>(n, 0));
  int r = out.cusps.empty() ? 4 : (int)out.cusps[0].classes[0].size();
  for (size_t i = 0; i < n; ++i)
    for (const auto& t : out.cusps[i].classes) {
      Tuple s = B.reduced_canon(braid_apply(G, t, shift_word(r)));
      auto it = cusp_of.find(s);
      if (it == cusp_of.end()) throw certification_error("sh left the orbit family");
      ++out.matrix[i][it->second];
    }
  for (size_t i = 0; i < n; ++i) {
    long long row = 0;
    for (size_t j = 0; j < n; ++j) {
      row += out.matrix[i][j];
      if (out.block_of[i] != out.block_of[j] && out.matrix[i][j] != 0)
        throw certification_error("sh-incidence crossed M-bar_4 orbits");
      if (r == 4 && out.matrix[i][j] != out.matrix[j][i])
        throw certification_error("sh-incidence not symmetric at r = 4");
    }
    if (row != out.cusps[i].width) throw certification_error("sh-incidence row sum is not the width");
  }
  return out;
}

// ---- shortening ----

struct ShorteningInfo {
  long long inner_len = 0;  // q2 orbit length on plain classes
  int reduced_width = 0;    // gamma_infinity orbit width on reduced classes
  int mu = 0;               // inner_len / reduced_width, in {1, 2, 4}
};

inline ShorteningInfo shortening_type(const BraidContext& B, const Tuple& t) {
  const ConcreteGroup& G = B.group();
  ShorteningInfo s;
  Tuple start = B.canon(t), cur = start;
  do {
    ++s.inner_len;
    Tuple nxt = cur;
    tuple_q_apply(G, nxt, 2);
    cur = B.canon(nxt);
  } while (!(cur == start));
  Tuple rstart = B.reduced_canon(t), rcur = rstart;
  do {
    ++s.reduced_width;
    Tuple nxt = rcur;
    tuple_q_apply(G, nxt, 2);
    rcur = B.reduced_canon(nxt);
  } while (!(rcur == rstart));
  if (s.inner_len % s.reduced_width) throw certification_error("shortening does not divide");
  s.mu = (int)(s.inner_len / s.reduced_width);
  if (s.mu != 1 && s.mu != 2 && s.mu != 4) throw certification_error("shortening outside {1,2,4}");
  return s;
}

// ---- q2 orbit length prediction ----

// For the middle pair (a, b): o = ord(ab) / |<ab>  intersect  Z(a, b)|.  The
// twist orbit has length o when o is odd and ord((ba)^{(o-1)/2} b) = 2, else 2o.
struct Q2LengthPrediction {
  int o = 0;
  bool xyswitch = false;
  long long predicted = 0;   // formula value
  long long direct = 0;      // literal twist iteration, always computed as a cross-check
  bool consistent = false;   // predicted == direct
};

// direct iteration of the twist (a, b) -> (aba^{-1}, a) on literal pairs
inline long long q2_pair_orbit_direct(const ConcreteGroup& G, uint16_t a, uint16_t b) {
  uint16_t x = a, y = b;
  long long n = 0;
  do {
    uint16_t nx = G.mul(G.mul(x, y), G.inv(x));
    y = x;
    x = nx;
    ++n;
  } while (!(x == a && y == b));
  return n;
}

inline Q2LengthPrediction q2_orbit_length(const ConcreteGroup& G, uint16_t a, uint16_t b) {
  Q2LengthPrediction p;
  uint16_t ab = G.mul(a, b);
  int d = G.elt_order(ab);
  int stab = 0;
  uint16_t pw = G.id();
  for (int k = 0; k < d; ++k) {
    if (G.mul(pw, a) == G.mul(a, pw) && G.mul(pw, b) == G.mul(b, pw)) ++stab;
    pw = G.mul(pw, ab);
  }
  p.o = d / stab;
  if (p.o % 2 == 1) {
    uint16_t y = G.power(G.mul(b, a), (p.o - 1) / 2);
    p.xyswitch = G.elt_order(G.mul(y, b)) == 2;
  }
  p.predicted = (p.o % 2 == 1 && p.xyswitch) ? p.o : 2LL * p.o;
  p.direct = q2_pair_orbit_direct(G, a, b);
  p.consistent = p.predicted == p.direct;
  return p;
}

// ---- reduced branch cycles (domain + gamma permutations) ----

struct ReducedAction {
  std::vector<Tuple> classes;  // sorted reduced classes: point i is classes[i]
  Perm gamma0, gamma1, gamma_inf, sh;
};

inline ReducedAction reduced_action(const BraidContext& B, const std::vector<Tuple>& reduced) {
  const ConcreteGroup& G = B.group();
  ReducedAction ra;
  ra.classes = reduced;
  std::sort(ra.classes.begin(), ra.classes.end());
  std::map<Tuple, uint16_t> index;
  for (uint16_t i = 0; i < ra.classes.size(); ++i) index[ra.classes[i]] = i;
  auto as_perm = [&](const std::vector<int>& word) {
    std::vector<uint16_t> img(ra.classes.size());
    for (size_t i = 0; i < ra.classes.size(); ++i) {
      Tuple t = B.reduced_canon(braid_apply(G, ra.classes[i], word));
      auto it = index.find(t);
      if (it == index.end()) throw certification_error("braid word left the reduced class list");
      img[i] = it->second;
    }
    return Perm::from_images(img);
  };
  ra.gamma0 = as_perm({1, 2});
  ra.gamma1 = as_perm({1, 2, 1});
  ra.gamma_inf = as_perm({2});
  int r = ra.classes.empty() ? 4 : (int)ra.classes[0].size();
  ra.sh = as_perm(shift_word(r));
  Perm id((int)ra.classes.size());
  if (!(ra.gamma0.pow(3) == id)) throw certification_error("gamma_0 is not of order dividing 3");
  if (!(ra.gamma1.pow(2) == id)) throw certification_error("gamma_1 is not of order dividing 2");
  if (!(ra.gamma0 * ra.gamma1 * ra.gamma_inf == id)) throw certification_error("gamma_0 gamma_1 gamma_inf != 1");
  if (r == 4 && !(ra.gamma1 == ra.sh)) throw certification_error("gamma_1 differs from sh on reduced classes");
  return ra;
}

}  // namespace bt
