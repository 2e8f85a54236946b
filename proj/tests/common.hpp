#pragma once
// Shared fixtures for the test binaries: the A5 module, the cocycle-built
// cover G1, Nielsen contexts, and the level-0/level-1 enumerations of the
// four-3-cycle Nielsen classes.  Everything is lazily built once per binary.
#include "braidtower/g1.hpp"
#include "braidtower/nielsen.hpp"

namespace btt {
using namespace bt;

struct World {
  MA5 mod;
  H2Solution h2;
  G1 g1;
  NielsenContext ctx0;          // over A5
  NielsenContext ctx1;          // over G1
  std::vector<uint16_t> proj;   // G1 element -> A5 element
  int c3_a5 = -1;               // 3-cycle class of A5
  int c3_g1 = -1;               // order-3 class of G1

  World() : mod(), h2(H2Solver(mod).solve()), g1(mod, h2), ctx0(mod.a5()), ctx1(g1.grp()) {
    proj.resize(g1.grp().order());
    for (uint32_t e = 0; e < g1.grp().order(); ++e) proj[e] = G1::proj_g((uint16_t)e);
    for (size_t c = 0; c < mod.a5().classes().size(); ++c)
      if (mod.a5().elt_order(mod.a5().class_rep((int)c)) == 3) c3_a5 = (int)c;
    for (size_t c = 0; c < g1.grp().classes().size(); ++c)
      if (g1.grp().elt_order(g1.grp().class_rep((int)c)) == 3) c3_g1 = (int)c;
  }

  // generation in G1 via the Frattini property: lifts of A5 generators generate
  std::function<bool(const Tuple&)> frattini_generates() const {
    return [this](const Tuple& t) {
      Tuple p(t.size());
      for (size_t i = 0; i < t.size(); ++i) p[i] = proj[t[i]];
      return mod.a5().generates(p);
    };
  }

  Tuple project(const Tuple& t) const {
    Tuple p(t.size());
    for (size_t i = 0; i < t.size(); ++i) p[i] = proj[t[i]];
    return p;
  }

  uint16_t a5_elt(const std::string& cycles) const { return mod.a5_index(Perm::parse(cycles, 5)); }

  Tuple a5_tuple(const std::vector<std::string>& cycles) const {
    Tuple t;
    for (const auto& s : cycles) t.push_back(a5_elt(s));
    return t;
  }
};

inline const World& world() {
  static World w;
  return w;
}

inline const NielsenEnumeration& level0_inner() {
  static NielsenEnumeration e =
      enumerate_nielsen_inner(world().ctx0, std::vector<int>(4, world().c3_a5));
  return e;
}

inline const NielsenEnumeration& level1_inner() {
  static NielsenEnumeration e = enumerate_nielsen_inner(
      world().ctx1, std::vector<int>(4, world().c3_g1), world().frattini_generates());
  return e;
}

inline const std::vector<std::vector<uint16_t>>& a5_outer_maps() {
  static std::vector<std::vector<uint16_t>> maps = [] {
    auto reps = normalizer_outer_reps(world().mod.a5_perms(), 5);
    std::vector<std::vector<uint16_t>> out;
    for (const auto& s : reps) out.push_back(outer_map_from_perm(world().mod.a5_perms(), s));
    return out;
  }();
  return maps;
}

}  // namespace btt
