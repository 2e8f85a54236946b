#pragma once
// The 5-dimensional GF(2) module M = GF(2)^6 / <all-ones> for A5 acting on the
// six cosets of a dihedral subgroup of order 10.  Vectors are encoded by the
// canonical lift with coordinate 1 equal to 0, packed as a 5-bit index m in
// [0,32) (mask >> 1 of the canonical 6-bit mask).
#include <array>

#include "braidtower/group.hpp"

namespace bt {

class MA5 {
 public:
  MA5() {
    PermGroup A5pg(5, {Perm::parse("(1 2 3 4 5)", 5), Perm::parse("(1 2 3)", 5)});
    perms_ = A5pg.enumerate();
    grp_ = ConcreteGroup::from_perms(perms_);
    for (uint16_t i = 0; i < perms_.size(); ++i) pidx_[perms_[i]] = i;

    // index-2 core: right cosets of D5 = <(1 3 4 2 5), (1 2)(3 4)>
    std::vector<uint16_t> d5 = grp_.closure(
        {pidx_.at(Perm::parse("(1 3 4 2 5)", 5)), pidx_.at(Perm::parse("(1 2)(3 4)", 5))});
    if (d5.size() != 10) throw certification_error("dihedral point stabilizer has wrong order");
    cosets_ = grp_.right_cosets(d5);
    if (cosets_.reps.size() != 6) throw certification_error("expected six cosets");

    for (uint32_t g = 0; g < 60; ++g) {
      Perm s = grp_.coset_perm(cosets_, (uint16_t)g);
      for (int j = 0; j < 6; ++j) sigma_[g][j] = (uint8_t)s((uint16_t)j);
    }
    // homomorphism check for the coset action
    for (uint32_t a = 0; a < 60; ++a)
      for (uint32_t b = 0; b < 60; ++b) {
        uint16_t ab = grp_.mul((uint16_t)a, (uint16_t)b);
        for (int j = 0; j < 6; ++j)
          if (sigma_[ab][j] != sigma_[b][sigma_[a][j]])
            throw certification_error("coset action is not a homomorphism");
      }

    // per-element 5x5 GF(2) matrices (columns = images of basis vectors)
    for (uint32_t g = 0; g < 60; ++g)
      for (int j = 0; j < 5; ++j) mat_[g][j] = act_by_mask((uint16_t)g, (uint8_t)(1u << j));
    for (uint32_t g = 0; g < 60; ++g)
      for (uint8_t m = 0; m < 32; ++m)
        if (act((uint16_t)g, m) != act_by_mask((uint16_t)g, m))
          throw certification_error("matrix action disagrees with coset permutation action");

    certify_module_structure();
  }

  const ConcreteGroup& a5() const { return grp_; }
  const std::vector<Perm>& a5_perms() const { return perms_; }
  uint16_t a5_index(const Perm& p) const { return pidx_.at(p); }

  // left action g.m via the 5x5 matrix
  uint8_t act(uint16_t g, uint8_t m) const {
    uint8_t out = 0;
    for (int j = 0; j < 5; ++j)
      if ((m >> j) & 1) out ^= mat_[g][j];
    return out;
  }

  const std::array<uint8_t, 5>& matrix(uint16_t g) const { return mat_[g]; }

  static bool in_V(uint8_t m) { return std::popcount((unsigned)(m << 1)) % 2 == 0; }
  bool in_M3(uint8_t m) const { return m3_mask_ >> m & 1; }
  bool in_M5(uint8_t m) const { return m5_mask_ >> m & 1; }

  std::vector<uint8_t> orbit_V() const { return members([&](uint8_t m) { return m && in_V(m); }); }
  std::vector<uint8_t> orbit_M3() const { return members([&](uint8_t m) { return in_M3(m); }); }
  std::vector<uint8_t> orbit_M5() const { return members([&](uint8_t m) { return in_M5(m); }); }

 private:
  template <class F>
  std::vector<uint8_t> members(F f) const {
    std::vector<uint8_t> out;
    for (uint8_t m = 0; m < 32; ++m)
      if (f(m)) out.push_back(m);
    return out;
  }

  uint8_t act_by_mask(uint16_t g, uint8_t m) const {
    unsigned mask = (unsigned)m << 1;  // canonical lift, coordinate on coset 0 is 0
    unsigned out = 0;
    for (int j = 0; j < 6; ++j)
      if ((mask >> sigma_[g][j]) & 1) out |= 1u << j;
    if (out & 1) out ^= 0x3F;  // renormalize modulo the all-ones vector
    return (uint8_t)(out >> 1);
  }

  void certify_module_structure() {
    // weight classes: complements have weights w and 6-w, so weight parity and
    // the {1,5} vs {3} split are class invariants
    for (uint8_t m = 1; m < 32; ++m) {
      int w = std::popcount((unsigned)(m << 1));
      if (w == 3)
        m3_mask_ |= 1u << m;
      else if (w == 1 || w == 5)
        m5_mask_ |= 1u << m;
    }
    if (std::popcount(m3_mask_) != 10 || std::popcount(m5_mask_) != 6)
      throw certification_error("weight strata have wrong sizes");
    // the three A5-orbits on M \ {0}: V\0 (15), weight-3 (10), weight-1/5 (6)
    auto orbit_of = [&](uint8_t m0) {
      std::vector<char> in(32, 0);
      std::vector<uint8_t> q{m0};
      in[m0] = 1;
      for (size_t i = 0; i < q.size(); ++i)
        for (uint32_t g = 0; g < 60; ++g) {
          uint8_t t = act((uint16_t)g, q[i]);
          if (!in[t]) {
            in[t] = 1;
            q.push_back(t);
          }
        }
      return q;
    };
    for (uint8_t m = 1; m < 32; ++m) {
      auto orb = orbit_of(m);
      size_t expect = in_M3(m) ? 10 : in_M5(m) ? 6 : 15;
      if (orb.size() != expect) throw certification_error("unexpected module orbit size");
      for (auto t : orb)
        if (in_M3(t) != in_M3(m) || in_M5(t) != in_M5(m) || in_V(t) != in_V(m))
          throw certification_error("module orbits do not respect weight strata");
    }
    // every order-3 / order-5 element fixes exactly one nonzero vector, lying
    // in the weight-3 / weight-1,5 stratum respectively
    for (uint32_t g = 0; g < 60; ++g) {
      int o = grp_.elt_order((uint16_t)g);
      if (o != 3 && o != 5) continue;
      int fixed = 0;
      uint8_t fv = 0;
      for (uint8_t m = 1; m < 32; ++m)
        if (act((uint16_t)g, m) == m) {
          ++fixed;
          fv = m;
        }
      if (fixed != 1) throw certification_error("order-3/5 element fixes != 1 nonzero vector");
      if (o == 3 && !in_M3(fv)) throw certification_error("order-3 fixed vector not weight-3");
      if (o == 5 && !in_M5(fv)) throw certification_error("order-5 fixed vector not weight-1/5");
    }
    // proper nonzero submodules: unions of orbits that form subspaces; only V
    std::array<std::vector<uint8_t>, 3> orbs{orbit_V(), orbit_M3(), orbit_M5()};
    for (int sel = 1; sel < 8; ++sel) {
      std::vector<char> in(32, 0);
      in[0] = 1;
      int size = 1;
      for (int k = 0; k < 3; ++k)
        if ((sel >> k) & 1)
          for (auto m : orbs[k]) {
            in[m] = 1;
            ++size;
          }
      bool closed = true;
      for (uint8_t a = 0; a < 32 && closed; ++a)
        for (uint8_t b = 0; b < 32 && closed; ++b)
          if (in[a] && in[b] && !in[a ^ b]) closed = false;
      bool expect = (sel == 1 || sel == 7);  // V alone, or all of M
      if (closed != expect) throw certification_error("submodule lattice is not {0, V, M}");
    }
  }

  std::vector<Perm> perms_;
  std::unordered_map<Perm, uint16_t, PermHash> pidx_;
  ConcreteGroup grp_;
  ConcreteGroup::CosetTable cosets_;
  std::array<std::array<uint8_t, 6>, 60> sigma_{};
  std::array<std::array<uint8_t, 5>, 60> mat_{};
  uint32_t m3_mask_ = 0, m5_mask_ = 0;
};

}  // namespace bt
