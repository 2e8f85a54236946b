#pragma once
// Normalized 2-cocycles for A5 acting on the 5-dimensional GF(2) module.
// A normalized cocycle is determined by its two generator rows c(x,.), c(y,.)
// (59 group arguments x 5 bits each = 590 unknowns): every other row follows
// from c(s g', h) = s.c(g', h) + c(s, g'h) + c(s, g') along a fixed BFS
// factorization.  Streaming all cocycle identities through that symbolic
// expansion yields the solution space; coboundary rows computed the same way
// give H^2 = Z^2 / B^2 together with a certified representative table.
#include "braidtower/gf2.hpp"
#include "braidtower/ma5.hpp"

namespace bt {

struct H2Solution {
  std::array<std::array<uint8_t, 60>, 60> c{};  // c[g][h], 5-bit values
  int rank_constraints = 0;   // rank of the streamed identity matrix
  int dim_solutions = 0;      // dim of cocycles restricted to generator rows
  int rank_coboundaries = 0;  // dim of coboundaries (= 295 - dim Z^1)
  int dim_h2 = 0;
  int dim_z1 = 0;
  int dim_h1 = 0;
};

class H2Solver {
 public:
  explicit H2Solver(const MA5& mod) : mod_(mod) {}

  H2Solution solve() const {
    const ConcreteGroup& G = mod_.a5();
    const uint16_t x = mod_.a5_index(Perm::parse("(1 2 3 4 5)", 5));
    const uint16_t y = mod_.a5_index(Perm::parse("(1 2 3)", 5));
    const int W = 590;

    // variable layout: h = 1..59 -> bits [10(h-1), 10(h-1)+5) = c(x,h),
    // next five = c(y,h)
    auto var = [&](uint16_t s, uint16_t h, int i) {
      return 10 * (h - 1) + (s == x ? 0 : 5) + i;
    };

    // BFS factorization g = s * parent
    std::vector<uint16_t> parent(60, 0), bfs;
    std::vector<uint16_t> letter(60, 0);
    {
      std::vector<char> seen(60, 0);
      std::vector<uint16_t> q{G.id()};
      seen[G.id()] = 1;
      for (size_t i = 0; i < q.size(); ++i)
        for (uint16_t s : {x, y}) {
          uint16_t t = G.mul(s, q[i]);
          if (!seen[t]) {
            seen[t] = 1;
            parent[t] = q[i];
            letter[t] = s;
            q.push_back(t);
            bfs.push_back(t);
          }
        }
      if (q.size() != 60) throw certification_error("generators do not generate A5");
    }

    // symbolic rows: srow(g,h) = five 590-bit vectors
    std::vector<BitVec> srow((size_t)60 * 60 * 5, BitVec(W));
    auto S = [&](uint16_t g, uint16_t h, int i) -> BitVec& {
      return srow[((size_t)g * 60 + h) * 5 + i];
    };
    for (uint16_t h = 1; h < 60; ++h)
      for (int i = 0; i < 5; ++i) {
        S(x, h, i).set(var(x, h, i));
        S(y, h, i).set(var(y, h, i));
      }
    auto add_acted = [&](uint16_t g, std::array<BitVec*, 5>& out, uint16_t src_g, uint16_t src_h) {
      const auto& M = mod_.matrix(g);
      for (int i = 0; i < 5; ++i) {
        // coordinate i of g.v = sum over j with matrix column j having bit i
        for (int j = 0; j < 5; ++j)
          if ((M[j] >> i) & 1) *out[i] ^= S(src_g, src_h, j);
      }
    };
    for (uint16_t g : bfs) {
      if (g == x || g == y) continue;  // generator rows are the base variables
      uint16_t s = letter[g], gp = parent[g];
      for (uint16_t h = 0; h < 60; ++h) {
        std::array<BitVec*, 5> out;
        for (int i = 0; i < 5; ++i) out[i] = &S(g, h, i);
        add_acted(s, out, gp, h);  // s.c(g',h)
        uint16_t gph = G.mul(gp, h);
        for (int i = 0; i < 5; ++i) {
          *out[i] ^= S(s, gph, i);
          *out[i] ^= S(s, gp, i);
        }
      }
    }

    // stream all identities a.c(b,h) + c(ab,h) + c(a,bh) + c(a,b) = 0
    GF2Elim elim(W);
    for (uint16_t a = 1; a < 60; ++a) {
      for (uint16_t b = 1; b < 60; ++b) {
        uint16_t ab = G.mul(a, b);
        for (uint16_t h = 1; h < 60; ++h) {
          uint16_t bh = G.mul(b, h);
          std::array<BitVec, 5> row;
          row.fill(BitVec(W));
          std::array<BitVec*, 5> out;
          for (int i = 0; i < 5; ++i) out[i] = &row[i];
          add_acted(a, out, b, h);
          for (int i = 0; i < 5; ++i) {
            row[i] ^= S(ab, h, i);
            row[i] ^= S(a, bh, i);
            row[i] ^= S(a, b, i);
            elim.add(std::move(row[i]));
          }
        }
      }
    }

    H2Solution sol;
    sol.rank_constraints = elim.rank();
    elim.rref();
    auto zbasis = elim.nullspace_basis();
    sol.dim_solutions = (int)zbasis.size();

    // coboundary rows: f supported on a single h0 with value e_i
    GF2Elim bd(W);
    for (uint16_t h0 = 1; h0 < 60; ++h0) {
      for (int i = 0; i < 5; ++i) {
        BitVec d(W);
        for (uint16_t s : {x, y}) {
          uint16_t sinv_h0 = G.mul(G.inv(s), h0);
          for (uint16_t h = 1; h < 60; ++h) {
            if (h == h0) {
              uint8_t img = mod_.act(s, (uint8_t)(1u << i));
              for (int k = 0; k < 5; ++k)
                if ((img >> k) & 1) d.flip(var(s, h, k));
            }
            if (h == sinv_h0) d.flip(var(s, h, i));
            if (s == h0) d.flip(var(s, h, i));
          }
        }
        bd.add(std::move(d));
      }
    }
    sol.rank_coboundaries = bd.rank();
    sol.dim_z1 = 295 - sol.rank_coboundaries;
    sol.dim_h1 = sol.dim_z1 - 5;  // B^1 has dim 5 since M^{A5} = 0
    sol.dim_h2 = sol.dim_solutions - sol.rank_coboundaries;
    if (sol.dim_h2 < 1) throw certification_error("H^2 vanished; no central extension");

    // representative: first solution-basis vector outside the coboundary span
    const BitVec* rep = nullptr;
    for (auto& v : zbasis)
      if (!bd.in_span(v)) {
        rep = &v;
        break;
      }
    if (!rep) throw certification_error("no non-coboundary cocycle found");

    // expand generator rows to the full 60x60 table along the BFS
    auto& c = sol.c;
    for (uint16_t h = 1; h < 60; ++h)
      for (int i = 0; i < 5; ++i) {
        if (rep->get(var(x, h, i))) c[x][h] |= 1u << i;
        if (rep->get(var(y, h, i))) c[y][h] |= 1u << i;
      }
    for (uint16_t g : bfs) {
      if (g == x || g == y) continue;
      uint16_t s = letter[g], gp = parent[g];
      for (uint16_t h = 0; h < 60; ++h)
        c[g][h] = (uint8_t)(mod_.act(s, c[gp][h]) ^ c[s][G.mul(gp, h)] ^ c[s][gp]);
    }

    // certify: normalization, every identity, and non-triviality
    for (uint16_t g = 0; g < 60; ++g)
      if (c[g][0] != 0 || c[0][g] != 0)
        throw certification_error("cocycle normalization violated");
    for (uint16_t a = 0; a < 60; ++a)
      for (uint16_t b = 0; b < 60; ++b)
        for (uint16_t h = 0; h < 60; ++h) {
          uint8_t lhs = (uint8_t)(mod_.act(a, c[b][h]) ^ c[G.mul(a, b)][h] ^
                                  c[a][G.mul(b, h)] ^ c[a][b]);
          if (lhs) throw certification_error("cocycle identity violated");
        }
    return sol;
  }

 private:
  const MA5& mod_;
};

}  // namespace bt
