#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "common.hpp"

using namespace bt;
using namespace btt;

TEST_CASE("level-0 inner and absolute enumeration") {
  const World& w = world();
  const auto& e = level0_inner();
  REQUIRE(e.classes.size() == 18);
  REQUIRE(e.tuples_visited == 54);  // 18 classes, each met |Z(g1)| = 3 times

  for (const auto& t : e.classes) {
    REQUIRE(w.ctx0.product_one(t));
    REQUIRE(w.mod.a5().generates(t));
    REQUIRE(w.ctx0.canonical_inner(t) == t);
  }

  REQUIRE(a5_outer_maps().size() == 1);  // S5-normalizer: one nontrivial coset
  auto abs = enumerate_nielsen_absolute(w.ctx0, std::vector<int>(4, w.c3_a5), a5_outer_maps());
  REQUIRE(abs.classes.size() == 9);

  std::map<int, int> mprs;
  for (const auto& t : e.classes) mprs[w.ctx0.mpr(t)]++;
  REQUIRE(mprs == std::map<int, int>{{1, 2}, {3, 6}, {5, 10}});

  int hm = 0;
  for (const auto& t : e.classes)
    if (hm_structure(w.mod.a5(), t) == HmTag::hm) ++hm;
  REQUIRE(hm == 2);
}

TEST_CASE("published level-0 list matches the enumeration exactly") {
  const World& w = world();
  std::vector<std::vector<std::string>> lista5 = {
      {"(1 2 3)", "(1 3 2)", "(1 4 5)", "(1 5 4)"}, {"(1 2 3)", "(1 4 5)", "(1 5 4)", "(1 3 2)"},
      {"(1 2 3)", "(1 4 5)", "(2 1 5)", "(2 4 3)"}, {"(1 2 3)", "(1 4 5)", "(3 2 1)", "(3 5 4)"},
      {"(1 2 3)", "(1 4 5)", "(4 3 2)", "(4 1 5)"}, {"(1 2 3)", "(1 4 5)", "(5 4 3)", "(5 2 1)"},
      {"(1 2 3)", "(2 1 4)", "(2 4 5)", "(5 3 2)"}, {"(1 2 3)", "(2 1 4)", "(3 2 5)", "(5 4 3)"},
      {"(1 2 3)", "(2 1 4)", "(4 3 5)", "(2 4 5)"}};
  std::set<Tuple> abs_table, inner_table;
  for (const auto& row : lista5) {
    Tuple t = w.a5_tuple(row);
    REQUIRE(w.ctx0.product_one(t));
    REQUIRE(w.mod.a5().generates(t));
    abs_table.insert(w.ctx0.canonical_absolute(t, a5_outer_maps()));
    inner_table.insert(w.ctx0.canonical_inner(t));
    Tuple c = t;
    for (auto& x : c) x = a5_outer_maps()[0][x];
    inner_table.insert(w.ctx0.canonical_inner(c));
  }
  REQUIRE(abs_table.size() == 9);
  REQUIRE(inner_table.size() == 18);

  auto abs = enumerate_nielsen_absolute(w.ctx0, std::vector<int>(4, w.c3_a5), a5_outer_maps());
  REQUIRE(std::set<Tuple>(abs.classes.begin(), abs.classes.end()) == abs_table);
  const auto& inner = level0_inner().classes;
  REQUIRE(std::set<Tuple>(inner.begin(), inner.end()) == inner_table);
}

TEST_CASE("canonical forms are stable under conjugation and threading") {
  const World& w = world();
  const auto& e = level0_inner();
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const Tuple& t = e.classes[rng() % e.classes.size()];
    uint16_t h = (uint16_t)(rng() % w.mod.a5().order());
    REQUIRE(w.ctx0.canonical_inner(w.ctx0.conj_tuple(t, h)) == t);
  }
  auto threaded = enumerate_nielsen_inner(w.ctx0, std::vector<int>(4, w.c3_a5), {}, 50'000'000, 4);
  REQUIRE(threaded.classes == e.classes);
}

TEST_CASE("level-1 census: count, fibers, middle products") {
  const World& w = world();
  const auto& e1 = level1_inner();
  REQUIRE(e1.classes.size() == 2304);
  REQUIRE(e1.tuples_visited == 13824);  // 2304 * |Z(g1)| = 2304 * 6

  // the generation shortcut through the quotient is honest: full closures agree
  std::mt19937_64 rng(7);
  for (int i = 0; i < 64; ++i) {
    const Tuple& t = e1.classes[rng() % e1.classes.size()];
    REQUIRE(w.g1.grp().generates(t));
  }

  std::map<Tuple, int> fibers;
  for (const auto& t : e1.classes) fibers[w.ctx0.canonical_inner(w.project(t))]++;
  REQUIRE(fibers.size() == 18);
  for (const auto& [cls, n] : fibers) REQUIRE(n == 128);

  std::map<std::pair<int, int>, int> mpr01;
  for (const auto& t : e1.classes) mpr01[{w.ctx0.mpr(w.project(t)), w.ctx1.mpr(t)}]++;
  std::map<std::pair<int, int>, int> expect = {{{3, 6}, 768}, {{5, 10}, 1280}, {{1, 1}, 16}, {{1, 2}, 240}};
  REQUIRE(mpr01 == expect);
}

TEST_CASE("level-1 H-M and near H-M structure") {
  const World& w = world();
  const ConcreteGroup& G = w.g1.grp();
  const auto& e1 = level1_inner();

  std::vector<Tuple> hms, nears;
  for (const auto& t : e1.classes) {
    HmTag tag = hm_structure(G, t, &w.mod.a5(), &w.proj);
    if (tag == HmTag::hm) hms.push_back(t);
    if (tag == HmTag::near_hm) nears.push_back(t);
  }
  REQUIRE(hms.size() == 16);
  REQUIRE(nears.size() == 16);

  // walk the q2 orbit of each: exactly one of its own kind, none of the other
  std::set<Tuple> hm_set(hms.begin(), hms.end()), near_set(nears.begin(), nears.end());
  auto scan_orbit = [&](const Tuple& start, int& hm_hits, int& near_hits) {
    Tuple cur = start;
    int len = 0;
    do {
      hm_hits += hm_set.count(cur);
      near_hits += near_set.count(cur);
      Tuple nxt = cur;
      tuple_q_apply(G, nxt, 2);
      cur = w.ctx1.canonical_inner(nxt);
      ++len;
    } while (!(cur == start));
    return len;
  };
  for (const auto& t : hms) {
    int hm_hits = 0, near_hits = 0;
    REQUIRE(scan_orbit(t, hm_hits, near_hits) == 20);
    REQUIRE(hm_hits == 1);
    REQUIRE(near_hits == 0);
  }
  for (const auto& t : nears) {
    int hm_hits = 0, near_hits = 0;
    REQUIRE(scan_orbit(t, hm_hits, near_hits) == 20);
    REQUIRE(hm_hits == 0);
    REQUIRE(near_hits == 1);
  }
}

TEST_CASE("near H-M synthesis and its braids") {
  const World& w = world();
  const ConcreteGroup& G = w.g1.grp();

  // order-3 lifts of (1 2 3) and (1 4 5)
  uint16_t b1 = w.a5_elt("(1 2 3)"), b2 = w.a5_elt("(1 4 5)");
  uint16_t g1e = 0, g2e = 0;
  for (int m = 0; m < 32; ++m) {
    if (G.elt_order(G1::mk(b1, (uint8_t)m)) == 3 && !g1e) g1e = G1::mk(b1, (uint8_t)m);
    if (G.elt_order(G1::mk(b2, (uint8_t)m)) == 3 && !g2e) g2e = G1::mk(b2, (uint8_t)m);
  }
  REQUIRE(G.elt_order(g1e) == 3);
  REQUIRE(G.elt_order(g2e) == 3);
  REQUIRE(w.mod.a5().elt_order(w.mod.a5().mul(b1, b2)) == 5);

  Tuple gstar = near_hm_synthesize(G, g1e, g2e, w.mod.a5(), w.proj);
  REQUIRE(hm_structure(G, gstar, &w.mod.a5(), &w.proj) == HmTag::near_hm);

  uint16_t c = G.power(G.mul(g1e, g2e), 5);
  REQUIRE(G1::proj_g(c) == 0);
  REQUIRE(w.mod.in_M5(G1::proj_m(c)));

  // the complement of the H-M rep with the same frame: ctilde = (g1^{-1} g2)^5
  uint16_t mid = G.mul(G.inv(g1e), g2e);
  REQUIRE(G.elt_order(mid) == 10);
  uint16_t ct = G.power(mid, 5);
  Tuple gprime = {g1e, G.conj(G.inv(g1e), ct), G.conj(g2e, ct), G.inv(g2e)};
  REQUIRE(w.ctx1.product_one(gprime));
  Tuple hm_ref = {g1e, G.inv(g1e), g2e, G.inv(g2e)};
  Tuple cur = gprime;
  for (int i = 0; i < 10; ++i) tuple_q_apply(G, cur, 2);
  REQUIRE(cur == hm_ref);  // ten q2 twists reach the H-M rep literally

  // q1^{-1} then ten q2 twists turn the synthesized tuple into a second H-M
  // rep, literally (g1', g1'^{-1}, g2, g2^{-1}) with g1' = c^{g2^{-1}} g1^{-1} c^{g2^{-1}}
  Tuple other = gstar;
  tuple_q_apply(G, other, 1, true);
  for (int i = 0; i < 10; ++i) tuple_q_apply(G, other, 2);
  uint16_t cg2 = G.conj(c, G.inv(g2e));  // g2 c g2^{-1}
  uint16_t g1p = G.mul(G.mul(cg2, G.inv(g1e)), cg2);
  REQUIRE(other == Tuple{g1p, G.inv(g1p), g2e, G.inv(g2e)});
  REQUIRE(!(w.ctx1.canonical_inner(other) == w.ctx1.canonical_inner(hm_ref)));

  // one more q1 puts it over the same ordered level-0 H-M class as the
  // reference, while staying a distinct level-1 class
  Tuple back = other;
  tuple_q_apply(G, back, 1);
  REQUIRE(is_hm_shape(G, back));
  REQUIRE(!(w.ctx1.canonical_inner(back) == w.ctx1.canonical_inner(hm_ref)));
  REQUIRE(w.ctx0.canonical_inner(w.project(back)) == w.ctx0.canonical_inner(w.project(hm_ref)));
}

TEST_CASE("class-algebra counting matches direct enumeration") {
  const World& w = world();
  const ConcreteGroup& A = w.mod.a5();
  int c5 = -1, c3 = w.c3_a5;
  for (size_t c = 0; c < A.classes().size(); ++c)
    if (A.elt_order(A.class_rep((int)c)) == 5 && c5 < 0) c5 = (int)c;

  auto direct2 = [&](int ca, int cb, uint16_t g) {
    long long n = 0;
    for (uint16_t u : A.classes()[ca])
      for (uint16_t v : A.classes()[cb])
        if (A.mul(A.mul(u, v), g) == A.id()) ++n;
    return n;
  };

  // pairs of 3-cycles against every member of a 5-cycle class: constant, equal
  long long ref = -1;
  for (uint16_t g : A.classes()[c5]) {
    long long n = class_product_count(A, {c3, c3}, g);
    REQUIRE(n == direct2(c3, c3, g));
    REQUIRE(n > 0);
    if (ref < 0) ref = n;
    REQUIRE(n == ref);
  }

  // r = 1: only the inverse class contributes, once
  uint16_t g = A.class_rep(c5);
  REQUIRE(class_product_count(A, {A.class_of(A.inv(g))}, g) == 1);
  REQUIRE(class_product_count(A, {c3}, g) == 0);

  // two 5-cycles of the same class can multiply to a 3-cycle
  uint16_t t3 = A.class_rep(c3);
  REQUIRE(class_product_count(A, {c5, c5}, t3) == direct2(c5, c5, t3));
  REQUIRE(class_product_count(A, {c5, c5}, t3) > 0);

  // four 3-cycles with product one, including non-generating tuples
  long long quad = 0;
  for (uint16_t u : A.classes()[c3])
    for (uint16_t v : A.classes()[c3])
      for (uint16_t x : A.classes()[c3]) {
        uint16_t y = A.inv(A.mul(A.mul(u, v), x));
        if (A.class_of(y) == c3) ++quad;
      }
  REQUIRE(class_product_count(A, {c3, c3, c3, c3}, A.id()) == quad);
}

TEST_CASE("dihedral reference family") {
  auto d50 = dihedral_reference(5, 0);
  REQUIRE(d50.absolute_count == 6);
  REQUIRE(d50.inner_count == 12);
  REQUIRE(std::count(d50.reduced_absolute_widths.begin(), d50.reduced_absolute_widths.end(), 1) >= 1);
  REQUIRE(std::count(d50.reduced_absolute_widths.begin(), d50.reduced_absolute_widths.end(), 5) >= 1);
  long long total50 = 0;
  for (int v : d50.reduced_absolute_widths) total50 += v;
  REQUIRE(total50 == 6);

  auto d51 = dihedral_reference(5, 1);
  REQUIRE(d51.absolute_count == 30);
  REQUIRE(d51.inner_count == 300);
  REQUIRE(std::count(d51.reduced_absolute_widths.begin(), d51.reduced_absolute_widths.end(), 1) >= 1);
  REQUIRE(std::count(d51.reduced_absolute_widths.begin(), d51.reduced_absolute_widths.end(), 25) >= 1);
  long long total51 = 0;
  for (int v : d51.reduced_absolute_widths) total51 += v;
  REQUIRE(total51 == 30);

  auto d70 = dihedral_reference(7, 0);
  REQUIRE(d70.absolute_count == 8);
  REQUIRE(d70.inner_count == 24);
  REQUIRE(std::count(d70.reduced_absolute_widths.begin(), d70.reduced_absolute_widths.end(), 1) >= 1);
  REQUIRE(std::count(d70.reduced_absolute_widths.begin(), d70.reduced_absolute_widths.end(), 7) >= 1);
}

TEST_CASE("budget and validation errors") {
  const World& w = world();
  REQUIRE_THROWS_AS(enumerate_nielsen_inner(w.ctx0, std::vector<int>(4, w.c3_a5), {}, 10), budget_error);
  REQUIRE_THROWS_AS(enumerate_nielsen_inner(w.ctx0, {w.c3_a5, w.c3_a5}), certification_error);
  REQUIRE_THROWS_AS(dihedral_reference(11, 2), budget_error);  // 11^3 > 343
}
