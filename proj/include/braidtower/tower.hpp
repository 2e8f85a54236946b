#pragma once
// Exact rank/genus recursions along a modular tower:
//   rk_{k+1} = 1 + (rk_k - 1) p^{rk_k},   g_{k+1} - 1 = p^{rk_k} (g_k - 1).
// Values are kept exactly in the form 1 + m p^e with p not dividing m, so
// levels whose values overflow machine integers stay exact.
#include <string>

#include "braidtower/perm.hpp"

namespace bt {

struct TowerValue {
  long long p = 0;
  long long m = 0;  // 0 encodes the value 1
  long long e = 0;
  // value = 1 + m * p^e

  static TowerValue from_int(long long p, long long v) {
    TowerValue t;
    t.p = p;
    if (v < 1) throw std::invalid_argument("tower values must be >= 1");
    long long d = v - 1;
    t.e = 0;
    while (d > 0 && d % p == 0) {
      d /= p;
      ++t.e;
    }
    t.m = d;
    if (d == 0) t.e = 0;
    return t;
  }

  bool small() const {
    if (m == 0) return true;
    long double v = (long double)m;
    for (long long i = 0; i < e; ++i) {
      v *= (long double)p;
      if (v > 4.0e18L) return false;
    }
    return true;
  }

  long long value() const {  // only when small()
    if (!small()) throw budget_error("tower value exceeds machine range");
    long long v = m;
    for (long long i = 0; i < e; ++i) v *= p;
    return 1 + v;
  }

  std::string to_string() const {
    if (small()) return std::to_string(value());
    return "1+" + std::to_string(m) + "*" + std::to_string(p) + "^" + std::to_string(e);
  }

  bool operator==(const TowerValue&) const = default;
};

struct TowerLevel {
  TowerValue rank, genus;
};

// levels 0..k of the recursion from (rk0, g0)
inline std::vector<TowerLevel> tower_arith(long long p, long long rk0, long long g0, int k) {
  if (p < 2) throw std::invalid_argument("tower prime must be >= 2");
  std::vector<TowerLevel> out;
  out.push_back({TowerValue::from_int(p, rk0), TowerValue::from_int(p, g0)});
  for (int lvl = 0; lvl < k; ++lvl) {
    const TowerValue &rk = out.back().rank, &g = out.back().genus;
    if (!rk.small())
      throw budget_error("tower level " + std::to_string(lvl + 1) +
                         ": rank exponent exceeds representable range");
    long long rkv = rk.value();
    // rk' - 1 = (rk - 1) p^rk = m p^(e + rk);  g' - 1 = (g - 1) p^rk
    TowerValue rk2{p, rk.m, rk.e + rkv};
    TowerValue g2{p, g.m, g.e + rkv};
    if (rk2.m == 0) rk2.e = 0;
    if (g2.m == 0) g2.e = 0;
    out.push_back({rk2, g2});
  }
  return out;
}

}  // namespace bt
