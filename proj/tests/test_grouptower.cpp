#include <catch2/catch_amalgamated.hpp>

#include "braidtower/g1.hpp"
#include "braidtower/tower.hpp"

using namespace bt;

static const MA5& the_module() {
  static MA5 mod;
  return mod;
}
static const H2Solution& the_h2() {
  static H2Solution sol = H2Solver(the_module()).solve();
  return sol;
}
static const G1& the_g1() {
  static G1 g1(the_module(), the_h2());
  return g1;
}

TEST_CASE("module of the degree-6 coset action") {
  const MA5& mod = the_module();  // constructor certifies the structure
  REQUIRE(mod.a5().order() == 60);
  REQUIRE(mod.orbit_V().size() == 15);
  REQUIRE(mod.orbit_M3().size() == 10);
  REQUIRE(mod.orbit_M5().size() == 6);
  // no nonzero invariant vector
  for (uint8_t m = 1; m < 32; ++m) {
    bool fixed_by_all = true;
    for (uint16_t g = 0; g < 60 && fixed_by_all; ++g) fixed_by_all = mod.act(g, m) == m;
    REQUIRE_FALSE(fixed_by_all);
  }
}

TEST_CASE("second cohomology is one-dimensional") {
  const H2Solution& sol = the_h2();
  REQUIRE(sol.dim_h2 == 1);
  // measured dimensions of the certified linear system
  REQUIRE(sol.rank_constraints == 300);
  REQUIRE(sol.dim_solutions == 290);
  REQUIRE(sol.rank_coboundaries == 289);
  REQUIRE(sol.dim_z1 == 6);
  REQUIRE(sol.dim_h1 == 1);
  // normalization (the identity row/column vanish)
  for (int g = 0; g < 60; ++g) {
    REQUIRE(sol.c[g][0] == 0);
    REQUIRE(sol.c[0][g] == 0);
  }
}

TEST_CASE("central extension certification") {
  const G1& g1 = the_g1();
  REQUIRE(g1.grp().order() == 1920);
  g1.certify();  // perfect, centerless, 31 involutions, V-quotient fingerprint,
                 // lift order laws, unique order-3 class, generating lift pairs
  REQUIRE(g1.order3().size() == 320);
  REQUIRE(g1.grp().centralizer(g1.order3()[0]).size() == 6);
  REQUIRE(g1.pullback_a4().grp.order() == 384);
}

TEST_CASE("degree-40 spin separation") {
  const G1& g1 = the_g1();
  auto R = g1.spin_sep_rep();
  REQUIRE(R.degree == 40);
  REQUIRE(R.stabilizer.size() == 48);
  REQUIRE(R.traces == std::array<int, 3>{4, 20, 8});
  // 2-cycle counts 18 / 10 / 16: odd, odd, even halves, so module lifts have
  // orders 4 / 4 / 2 across the three strata
  const MA5& mod = the_module();
  for (uint8_t m = 1; m < 32; ++m) {
    int two_cycles = 0;
    for (auto& c : R.image[G1::mk(0, m)].cycles())
      if (c.size() == 2) ++two_cycles;
    REQUIRE(two_cycles == (mod.in_M3(m) ? 18 : mod.in_M5(m) ? 10 : 16));
  }
  auto R120 = g1.spin_sep_rep_120();
  REQUIRE(R120.degree == 120);
  REQUIRE(R120.traces == std::array<int, 3>{12, 60, 24});
}

TEST_CASE("commuting involution profiles") {
  const G1& g1 = the_g1();
  const MA5& mod = the_module();
  auto R = g1.spin_sep_rep();
  auto m3 = mod.orbit_M3(), m5 = mod.orbit_M5();
  for (size_t i = 0; i < m3.size(); ++i)
    for (size_t j = i + 1; j < m3.size(); ++j) {
      auto P = g1.commuting_involution_profile(R, m3[i], m3[j]);
      REQUIRE(P.b == 4);
      REQUIRE(P.c == 6);
      REQUIRE(P.a == 2);
      REQUIRE(P.u == 18);
      REQUIRE(P.u_prod == 16);
    }
  for (size_t i = 0; i < m5.size(); ++i)
    for (size_t j = i + 1; j < m5.size(); ++j) {
      auto P = g1.commuting_involution_profile(R, m5[i], m5[j]);
      REQUIRE(P.a == 6);
      REQUIRE(P.a_sym == 6);
      REQUIRE(P.b == 0);
      REQUIRE(P.c == 2);
      REQUIRE(P.u == 10);
    }
  auto P = g1.commuting_involution_profile(R, m3[0], m3[0]);
  REQUIRE(P.a == 0);
  REQUIRE(P.b == P.u);
  REQUIRE(P.c == 0);
}

TEST_CASE("tower rank and genus recursion") {
  auto tw = tower_arith(2, 5, 21, 2);
  REQUIRE(tw[0].rank.value() == 5);
  REQUIRE(tw[0].genus.value() == 21);
  REQUIRE(tw[1].rank.value() == 129);
  REQUIRE(tw[1].genus.value() == 641);
  REQUIRE(tw[2].rank.to_string() == "1+1*2^136");
  REQUIRE(tw[2].genus.to_string() == "1+5*2^136");
  REQUIRE_FALSE(tw[2].genus.small());
  REQUIRE_THROWS_AS(tower_arith(2, 5, 21, 3), budget_error);
  // a seed where everything stays small
  auto tws = tower_arith(3, 2, 2, 2);
  REQUIRE(tws[1].rank.value() == 1 + 1 * 9);   // 1 + (2-1)*3^2
  REQUIRE(tws[1].genus.value() == 1 + 9);      // 1 + 3^2*(2-1)
  REQUIRE(tws[2].rank.value() == 1 + 9 * 59049);
  REQUIRE(tws[2].genus.value() == 1 + 9 * 59049);
}
