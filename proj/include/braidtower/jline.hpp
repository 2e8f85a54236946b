#pragma once
// j-line covers attached to reduced M-bar_4 orbits: branch cycle triples,
// Riemann-Hurwitz genus, moduli fineness, geometric monodromy (with a block
// decomposition for level-over-level relative monodromy) and relative cusp
// ramification indices.
#include <functional>
#include <optional>

#include "braidtower/braid.hpp"

namespace bt {

constexpr int kMonodromyDegreeCap = 512;

struct JCover {
  int degree = 0;
  Perm gamma0, gamma1, gamma_inf;
  int tr0 = 0, tr1 = 0;          // classes fixed over j = 0 and j = 1
  std::vector<int> cusp_widths;  // gamma_inf cycle lengths, descending
  int genus = 0;
};

// 2(|O| + g - 1) = 2(|O| - tr0)/3 + (|O| - tr1)/2 + sum_cusps(v - 1); any
// divisibility or sign failure signals an orbit/width bug upstream.
inline int rh_genus(int degree, int tr0, int tr1, const std::vector<int>& widths) {
  if ((degree - tr0) % 3 || (degree - tr1) % 2)
    throw certification_error("ramification counts do not divide the degree");
  long long rhs = 2LL * (degree - tr0) / 3 + (degree - tr1) / 2;
  long long total = 0;
  for (int v : widths) {
    rhs += v - 1;
    total += v;
  }
  if (total != degree) throw certification_error("cusp widths do not sum to the degree");
  if (rhs % 2) throw certification_error("Riemann-Hurwitz parity failure");
  long long g = rhs / 2 - degree + 1;
  if (g < 0) throw certification_error("negative genus");
  return (int)g;
}

inline JCover branch_cycles(const BraidContext& B, const std::vector<Tuple>& reduced) {
  if (!reduced.empty() && reduced[0].size() != 4) throw certification_error("branch cycles need r = 4");
  for (const auto& t : reduced)
    if (!(B.reduced_canon(t) == t)) throw certification_error("input class not reduced");
  ReducedAction ra = reduced_action(B, reduced);  // relations certified inside
  JCover c;
  c.degree = (int)ra.classes.size();
  c.gamma0 = ra.gamma0;
  c.gamma1 = ra.gamma1;
  c.gamma_inf = ra.gamma_inf;
  c.tr0 = c.gamma0.n_fixed();
  c.tr1 = c.gamma1.n_fixed();
  for (const auto& cyc : c.gamma_inf.cycles(true)) c.cusp_widths.push_back((int)cyc.size());
  std::sort(c.cusp_widths.rbegin(), c.cusp_widths.rend());
  c.genus = rh_genus(c.degree, c.tr0, c.tr1, c.cusp_widths);
  return c;
}

// b-fine iff every Q'' orbit on the underlying classes has length 4; fine
// additionally needs every point over j = 0 and j = 1 to ramify.
enum class Fineness { not_b_fine, b_fine, fine };

inline const char* to_string(Fineness f) {
  switch (f) {
    case Fineness::not_b_fine: return "not-b-fine";
    case Fineness::b_fine: return "b-fine";
    default: return "fine";
  }
}

inline Fineness moduli_fineness(const BraidContext& B, const std::vector<Tuple>& reduced) {
  bool all4 = true;
  for (const auto& t : reduced) all4 &= B.qpp_orbit(t).size() == 4;
  if (!all4) return Fineness::not_b_fine;
  JCover c = branch_cycles(B, reduced);
  return (c.tr0 == 0 && c.tr1 == 0) ? Fineness::fine : Fineness::b_fine;
}

inline unsigned long long monodromy_order(const JCover& c) {
  if (c.degree > kMonodromyDegreeCap)
    throw budget_error("monodromy degree " + std::to_string(c.degree) + " over cap 512");
  return BSGS(c.degree, {c.gamma0, c.gamma1}).order();
}

// Monodromy refined by a block system (e.g. the fibers of a level
// projection): the full order, the induced action on blocks, and the block-0
// stabilizer restricted to block 0 (via Schreier generators), whose order is
// the relative monodromy of one fiber.
struct BlockMonodromy {
  unsigned long long full_order = 0;  // 0 when the order exceeds 64 bits
  unsigned long long block_order = 0;
  unsigned long long one_block_order = 0;
  int blocks = 0, block_size = 0;
};

inline BlockMonodromy block_monodromy(int degree, const std::vector<Perm>& gens,
                                      const std::vector<int>& block_of) {
  if (degree > kMonodromyDegreeCap)
    throw budget_error("monodromy degree " + std::to_string(degree) + " over cap 512");
  BlockMonodromy out;
  out.blocks = *std::max_element(block_of.begin(), block_of.end()) + 1;
  std::vector<int> size(out.blocks, 0);
  for (int b : block_of) ++size[b];
  for (int s : size)
    if (s != size[0]) throw certification_error("blocks of unequal size");
  out.block_size = size[0];

  std::vector<Perm> bgens;
  for (const auto& g : gens) {
    std::vector<uint16_t> img(out.blocks, 0xffff);
    for (int x = 0; x < degree; ++x) {
      int from = block_of[x], to = block_of[g((uint16_t)x)];
      if (img[from] == 0xffff)
        img[from] = (uint16_t)to;
      else if (img[from] != to)
        throw certification_error("generator does not preserve the block system");
    }
    bgens.push_back(Perm::from_images(std::move(img)));
  }
  BSGS full(degree, gens);
  try {
    out.full_order = full.order();
  } catch (const budget_error&) {
    out.full_order = 0;
  }
  out.block_order = BSGS(out.blocks, bgens).order();
  if (full.order_mod(out.block_order) != 0)
    throw certification_error("block action order does not divide the full order");

  // transversal t[b]: block 0 -> block b, then Schreier generators
  // t[b] g t[b.g]^{-1} of the block-0 stabilizer, restricted to block 0
  std::vector<Perm> t(out.blocks);
  std::vector<char> have(out.blocks, 0);
  t[0] = Perm(degree);
  have[0] = 1;
  std::vector<int> bfs{0};
  for (size_t q = 0; q < bfs.size(); ++q)
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      int to = bgens[gi]((uint16_t)bfs[q]);
      if (!have[to]) {
        have[to] = 1;
        t[to] = t[bfs[q]] * gens[gi];
        bfs.push_back(to);
      }
    }
  if ((int)bfs.size() != out.blocks) throw certification_error("block action not transitive");

  std::vector<int> pts, where(degree, -1);
  for (int x = 0; x < degree; ++x)
    if (block_of[x] == 0) {
      where[x] = (int)pts.size();
      pts.push_back(x);
    }
  std::vector<Perm> rgens;
  for (int b = 0; b < out.blocks; ++b)
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      Perm s = t[b] * gens[gi] * t[bgens[gi]((uint16_t)b)].inverse();
      std::vector<uint16_t> img(pts.size());
      for (size_t k = 0; k < pts.size(); ++k) {
        int y = s((uint16_t)pts[k]);
        if (block_of[y] != 0) throw certification_error("Schreier generator leaves the block");
        img[k] = (uint16_t)where[y];
      }
      rgens.push_back(Perm::from_images(std::move(img)));
    }
  out.one_block_order = PermGroup((int)pts.size(), rgens).order();
  return out;
}

// Ramification index of a cusp over the cusp below it: the width ratio
// v'/v, certified against the alpha-beta-mu factorization
// ind * alpha * mu' = alpha' * beta * mu with alpha = v mu / u, beta = u'/u.
struct RelativeIndex {
  int ind = 0;
  int alpha_low = 0, alpha_high = 0, beta = 0;
  int mu_low = 0, mu_high = 0;
};

inline RelativeIndex relative_cusp_index(const BraidContext& B_high, const CuspOrbit& high,
                                         const BraidContext& B_low, const CuspOrbit& low,
                                         const std::function<Tuple(const Tuple&)>& project) {
  for (const auto& t : high.classes) {
    Tuple down = B_low.reduced_canon(project(t));
    if (std::find(low.classes.begin(), low.classes.end(), down) == low.classes.end())
      throw certification_error("cusp does not lie over the claimed cusp");
  }
  RelativeIndex r;
  r.mu_high = shortening_type(B_high, high.classes[0]).mu;
  r.mu_low = shortening_type(B_low, low.classes[0]).mu;
  auto exact_div = [](long long a, long long b, const char* what) {
    if (b == 0 || a % b) throw certification_error(std::string(what) + " is not integral");
    return (int)(a / b);
  };
  r.ind = exact_div(high.width, low.width, "cusp width ratio");
  r.alpha_high = exact_div((long long)high.width * r.mu_high, high.mpr, "alpha'");
  r.alpha_low = exact_div((long long)low.width * r.mu_low, low.mpr, "alpha");
  r.beta = exact_div(high.mpr, low.mpr, "beta");
  if ((long long)r.ind * r.alpha_low * r.mu_high != (long long)r.alpha_high * r.beta * r.mu_low)
    throw certification_error("index factorization mismatch");
  return r;
}

// tau with tau^{-1} a_i tau = b_i for a transitive pair (a0, a1), if one
// exists: the image of point 0 forces the rest along a BFS spanning tree
inline std::optional<Perm> pair_action_conjugator(const Perm& a0, const Perm& a1,
                                                  const Perm& b0, const Perm& b1) {
  int n = a0.degree();
  if (a1.degree() != n || b0.degree() != n || b1.degree() != n) return std::nullopt;
  std::vector<std::pair<int, int>> parent(n, {-1, -1});  // (source point, generator)
  std::vector<int> bfs{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  const Perm* as[2] = {&a0, &a1};
  const Perm* bs[2] = {&b0, &b1};
  for (size_t q = 0; q < bfs.size(); ++q)
    for (int g = 0; g < 2; ++g) {
      int y = (*as[g])((uint16_t)bfs[q]);
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = {bfs[q], g};
        bfs.push_back(y);
      }
    }
  if ((int)bfs.size() != n) return std::nullopt;  // needs transitivity
  for (int c = 0; c < n; ++c) {
    std::vector<uint16_t> img(n);
    img[0] = (uint16_t)c;
    for (size_t q = 1; q < bfs.size(); ++q) {
      auto [x, g] = parent[bfs[q]];
      img[bfs[q]] = (*bs[g])(img[x]);
    }
    std::vector<char> hit(n, 0);
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      if (hit[img[x]]) ok = false;
      hit[img[x]] = 1;
    }
    if (!ok) continue;
    Perm tau = Perm::from_images(img);
    if (conjugate(a0, tau) == b0 && conjugate(a1, tau) == b1) return tau;
  }
  return std::nullopt;
}

}  // namespace bt
