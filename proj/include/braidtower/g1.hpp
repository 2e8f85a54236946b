#pragma once
// The order-1920 central-kernel extension 1 -> M -> G1 -> A5 -> 1 attached to
// a certified non-trivial 2-cocycle, plus its degree-40 coset representation
// used to separate spin invariants.  Elements are encoded g*32 + m.
#include "braidtower/cocycle.hpp"

namespace bt {

class G1 {
 public:
  G1(const MA5& mod, const H2Solution& h2) : mod_(mod), c_(h2.c) {
    grp_ = ConcreteGroup::from_mul(1920, [&](uint16_t a, uint16_t b) {
      uint16_t g1 = (uint16_t)(a >> 5), g2 = (uint16_t)(b >> 5);
      uint8_t m1 = a & 31, m2 = b & 31;
      uint8_t m = (uint8_t)(m1 ^ mod_.act(g1, m2) ^ c_[g1][g2]);
      return (uint16_t)((mod_.a5().mul(g1, g2) << 5) | m);
    });
    if (grp_.id() != 0) throw certification_error("extension identity is not (0, id)");
  }

  const ConcreteGroup& grp() const { return grp_; }
  const MA5& module() const { return mod_; }
  static uint16_t mk(uint16_t g, uint8_t m) { return (uint16_t)((g << 5) | m); }
  static uint16_t proj_g(uint16_t e) { return (uint16_t)(e >> 5); }
  static uint8_t proj_m(uint16_t e) { return (uint8_t)(e & 31); }

  // sorted order-3 elements (the unique order-3 class, size 320)
  std::vector<uint16_t> order3() const {
    std::vector<uint16_t> out;
    for (uint32_t e = 0; e < 1920; ++e)
      if (grp_.elt_order((uint16_t)e) == 3) out.push_back((uint16_t)e);
    return out;
  }

  void certify() const {
    const ConcreteGroup& A5 = mod_.a5();
    if (grp_.order() != 1920) throw certification_error("extension order != 1920");
    if (!grp_.is_perfect()) throw certification_error("extension not perfect");
    if (grp_.center().size() != 1) throw certification_error("extension has a center");

    // involutions: exactly the 31 nonzero module elements
    int ninv = 0;
    for (uint32_t e = 0; e < 1920; ++e)
      if (grp_.elt_order((uint16_t)e) == 2) {
        ++ninv;
        if (proj_g((uint16_t)e) != 0)
          throw certification_error("involution outside the module kernel");
      }
    if (ninv != 31) throw certification_error("expected 31 involutions");

    // quotient by V: order 120, perfect, a unique involution
    std::vector<uint16_t> vsub;
    for (uint8_t m = 0; m < 32; ++m)
      if (MA5::in_V(m)) vsub.push_back(mk(0, m));
    auto Q = grp_.quotient(vsub);
    if (Q.grp.order() != 120 || !Q.grp.is_perfect())
      throw certification_error("V-quotient is not a perfect group of order 120");
    int qinv = 0;
    for (uint32_t e = 0; e < 120; ++e)
      if (Q.grp.elt_order((uint16_t)e) == 2) ++qinv;
    if (qinv != 1) throw certification_error("V-quotient does not have a unique involution");

    // lift orders over A5: even order doubles for every lift; odd order is
    // preserved by exactly half the lifts
    for (uint16_t g = 0; g < 60; ++g) {
      int o = A5.elt_order(g);
      if (o == 1) continue;
      int preserved = 0;
      for (uint8_t m = 0; m < 32; ++m) {
        int lo = grp_.elt_order(mk(g, m));
        if (o % 2 == 0) {
          if (lo != 2 * o) throw certification_error("even-order lift does not double order");
        } else if (lo == o) {
          ++preserved;
        } else if (lo != 2 * o) {
          throw certification_error("odd-order lift has unexpected order");
        }
      }
      if (o % 2 == 1 && preserved != 16)
        throw certification_error("odd-order element not preserved by exactly 16 lifts");
    }

    // order-3 elements: one class of 320 with centralizer of order 6
    auto o3 = order3();
    if (o3.size() != 320) throw certification_error("expected 320 order-3 elements");
    int c3 = grp_.class_of(o3[0]);
    for (auto e : o3)
      if (grp_.class_of(e) != c3) throw certification_error("order-3 elements split classes");
    if (grp_.centralizer(o3[0]).size() != 6)
      throw certification_error("order-3 centralizer order != 6");

    // Frattini property: generating pairs of A5 (class rep x anything) have
    // all 32*32 lift pairs generating.  A proper subgroup has order <= 960,
    // so a closure passing 960 is everything.
    for (auto& cls : A5.classes()) {
      uint16_t a = cls[0];
      if (a == A5.id()) continue;
      for (uint16_t b = 0; b < 60; ++b) {
        if (A5.closure({a, b}, 59).size() < 60) continue;
        for (uint8_t ma = 0; ma < 32; ++ma)
          for (uint8_t mb = 0; mb < 32; ++mb)
            if (grp_.closure({mk(a, ma), mk(b, mb)}, 960).size() <= 960)
              throw certification_error("lift pair fails to generate the extension");
      }
    }
  }

  // pullback of the point stabilizer A4 = <(1 2 3), (1 2)(3 4)>: order 384
  ConcreteGroup::Subgroup pullback_a4() const {
    const ConcreteGroup& A5 = mod_.a5();
    auto a4 = A5.closure({mod_.a5_index(Perm::parse("(1 2 3)", 5)),
                          mod_.a5_index(Perm::parse("(1 2)(3 4)", 5))});
    if (a4.size() != 12) throw certification_error("A4 subgroup has wrong order");
    std::vector<uint16_t> elems;
    for (auto g : a4)
      for (uint8_t m = 0; m < 32; ++m) elems.push_back(mk(g, m));
    std::sort(elems.begin(), elems.end());
    return grp_.subgroup(elems);
  }

  // coset representation splitting spin invariants
  struct CosetRep {
    int degree = 0;
    uint16_t alpha = 0, beta = 0;            // generators of the stabilizer
    std::vector<uint16_t> stabilizer;        // sorted
    std::vector<Perm> image;                 // per group element
    std::array<int, 3> traces{};             // fixed points on (M3', M5', V\0)
  };

  // degree 40: stabilizer <alpha, beta> of order 48 with S3 image in A5;
  // deterministic search by least encoded pair.  Separation forces how the
  // stabilizer meets the module: one weight-3, three weight-1/5 and three
  // even-weight vectors (any other pattern leaves an even 2-cycle count on an
  // odd-weight stratum, so its lifts would not reach order 4).
  CosetRep spin_sep_rep() const {
    for (uint16_t a = 0; a < 1920; ++a) {
      if (grp_.elt_order(a) != 4) continue;
      for (uint16_t b = 0; b < 1920; ++b) {
        if (grp_.elt_order(b) != 3) continue;
        auto H = grp_.closure({a, b}, 48);
        if (H.size() != 48) continue;
        std::vector<char> img(60, 0);
        int nimg = 0, n3 = 0, n5 = 0, nv = 0;
        for (auto h : H) {
          if (!img[proj_g(h)]) {
            img[proj_g(h)] = 1;
            ++nimg;
          }
          if (proj_g(h) == 0 && h != 0) {
            uint8_t m = proj_m(h);
            if (mod_.in_M3(m))
              ++n3;
            else if (mod_.in_M5(m))
              ++n5;
            else
              ++nv;
          }
        }
        if (nimg != 6 || n3 != 1 || n5 != 3 || nv != 3) continue;
        return build_rep(a, b, H);
      }
    }
    throw certification_error("no order-48 spin-separating stabilizer found");
  }

  // optional degree-120 variant: order-16 stabilizer inside the order-48 one
  CosetRep spin_sep_rep_120() const {
    auto R40 = spin_sep_rep();
    std::vector<uint16_t> S = grp_.closure({R40.alpha});
    while (S.size() < 16) {
      bool grew = false;
      for (auto z : R40.stabilizer) {
        if (std::binary_search(S.begin(), S.end(), z)) continue;
        auto seed = S;
        seed.push_back(z);
        auto cl = grp_.closure(seed, 16);
        size_t n = cl.size();
        if (n <= 16 && (n & (n - 1)) == 0) {
          S = cl;
          grew = true;
          break;
        }
      }
      if (!grew) throw certification_error("no order-16 stabilizer inside the order-48 one");
    }
    return build_rep(R40.alpha, 0, S);
  }

  struct InvolProfile {
    int a = 0;       // 2-cycles of T(m) fixed pointwise by T(m')
    int a_sym = 0;   // 2-cycles of T(m') fixed pointwise by T(m)
    int b = 0;       // 2-cycles shared by both
    int c = 0;       // interchanged pairs of 2-cycles
    int u = 0;       // 2-cycles of T(m)
    int u_prod = 0;  // 2-cycles of T(m m')
  };

  InvolProfile commuting_involution_profile(const CosetRep& R, uint8_t m, uint8_t m2) const {
    const Perm &g = R.image[mk(0, m)], &g2 = R.image[mk(0, m2)];
    if (!(g * g2 == g2 * g)) throw certification_error("module images fail to commute");
    auto count = [&](const Perm& p, const Perm& q, int& fixed, int& shared, int& moved) {
      for (auto& cyc : p.cycles()) {
        if (cyc.size() != 2) continue;
        uint16_t x = cyc[0], y = cyc[1];
        if (q(x) == x && q(y) == y)
          ++fixed;
        else if (q(x) == y)
          ++shared;
        else {
          if (p(q(x)) != q(y)) throw certification_error("commuting involution trichotomy broken");
          ++moved;
        }
      }
    };
    InvolProfile P;
    int moved = 0, moved_sym = 0, shared_sym = 0;
    count(g, g2, P.a, P.b, moved);
    count(g2, g, P.a_sym, shared_sym, moved_sym);
    if (moved % 2) throw certification_error("interchanged 2-cycles not paired");
    P.c = moved / 2;
    for (auto& cyc : g.cycles())
      if (cyc.size() == 2) ++P.u;
    Perm prod = R.image[grp_.mul(mk(0, m), mk(0, m2))];
    for (auto& cyc : prod.cycles())
      if (cyc.size() == 2) ++P.u_prod;
    if (P.a + P.b + 2 * P.c != P.u)
      throw certification_error("2-cycle census identity a + b + 2c = u fails");
    if (m != m2 && P.a + P.a_sym + 2 * P.c != P.u_prod)
      throw certification_error("2-cycle census identity a + a' + 2c = u'' fails");
    return P;
  }

 private:
  CosetRep build_rep(uint16_t a, uint16_t b, const std::vector<uint16_t>& H) const {
    CosetRep R;
    R.alpha = a;
    R.beta = b;
    R.stabilizer = H;
    auto T = grp_.right_cosets(H);
    R.degree = (int)T.reps.size();
    R.image.resize(1920);
    for (uint32_t e = 0; e < 1920; ++e) {
      R.image[e] = grp_.coset_perm(T, (uint16_t)e);
      if (!R.image[e].is_even())
        throw certification_error("coset image is an odd permutation");
      if (e != 0 && R.image[e].is_identity())
        throw certification_error("coset representation is not faithful");
    }
    auto trace_on = [&](const std::vector<uint8_t>& ms) {
      int t = R.image[mk(0, ms[0])].n_fixed();
      for (auto m : ms)
        if (R.image[mk(0, m)].n_fixed() != t)
          throw certification_error("fixed-point count not constant on module orbit");
      return t;
    };
    R.traces = {trace_on(mod_.orbit_M3()), trace_on(mod_.orbit_M5()),
                trace_on(mod_.orbit_V())};
    return R;
  }

  const MA5& mod_;
  std::array<std::array<uint8_t, 60>, 60> c_;
  ConcreteGroup grp_;
};

}  // namespace bt
