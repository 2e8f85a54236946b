#pragma once
// Double cover of S_n generated by shat_1..shat_{n-1} with relations
//   shat_q^2 = 1,
//   shat_q shat_r = -shat_r shat_q   (|q-r| >= 2),
//   shat_q shat_{q+1} shat_q = shat_{q+1} shat_q shat_{q+1},
// realized concretely by shat_q = (e_q - e_{q+1})/sqrt(2) in the Clifford
// algebra with e_q^2 = 1 (see CliffordDense below, used as an oracle).
//
// An element is a sign relative to the canonical staircase word of its
// underlying permutation:
//   W(pi) = W(pi restricted below n) ++ s_{n-1} s_{n-2} ... s_{m},
// where the top block is the cycle mapping n -> m and x -> x+1 for
// m <= x < n, with m = (n)pi.  Appending a generator rewrites the staircase
// in O(n) with explicit sign bookkeeping:
//   q = m-1            extend block          sign +1
//   q = m              cancel square         sign +1
//   q < m-1            hop the whole block   sign (-1)^{k-m}, recurse s_q
//   m < q <= k-1       hop via a braid move  sign (-1)^{k-m}, recurse s_{q-1}
#include <bit>

#include "braidtower/perm.hpp"

namespace bt {

class SpinElement {
 public:
  // (id, +1)
  static SpinElement identity(int n) {
    SpinElement e;
    e.n_ = n;
    e.sign_ = 1;
    e.m_.assign(n + 1, 0);
    for (int k = 0; k <= n; ++k) e.m_[k] = (uint8_t)k;  // empty blocks
    return e;
  }

  // canonical lift (pi, +1)
  static SpinElement lift(const Perm& p) {
    int n = p.degree();
    if (n > 255) throw budget_error("spin lift: degree > 255");
    SpinElement e = identity(n);
    std::vector<int> img(n);  // 1-based images
    for (int x = 0; x < n; ++x) img[x] = p(x) + 1;
    for (int k = n; k >= 2; --k) {
      int m = img[k - 1];
      e.m_[k] = (uint8_t)m;
      // strip the block: img <- img * B_k^{-1} where B_k^{-1}(m) = k and
      // B_k^{-1}(y) = y-1 for m < y <= k
      for (int x = 0; x < k; ++x) {
        int y = img[x];
        if (y == m)
          img[x] = k;
        else if (y > m && y <= k)
          img[x] = y - 1;
      }
    }
    return e;
  }

  // the central element zhat = (id, -1)
  static SpinElement z(int n) {
    SpinElement e = identity(n);
    e.sign_ = -1;
    return e;
  }

  int degree() const { return n_; }
  int sign() const { return sign_; }
  void negate() { sign_ = -sign_; }

  bool is_identity() const {
    if (sign_ != 1) return false;
    for (int k = 2; k <= n_; ++k)
      if (m_[k] != k) return false;
    return true;
  }

  bool is_z() const {
    if (sign_ != -1) return false;
    for (int k = 2; k <= n_; ++k)
      if (m_[k] != k) return false;
    return true;
  }

  Perm to_perm() const {
    std::vector<uint16_t> img(n_);
    for (int x = 1; x <= n_; ++x) {
      int v = x;
      for (int k = 2; k <= n_; ++k) {
        int m = m_[k];
        if (v == k)
          v = m;
        else if (v >= m && v < k)
          ++v;
      }
      img[x - 1] = (uint16_t)(v - 1);
    }
    return Perm::from_images(img);
  }

  // right-multiply by shat_q, 1 <= q <= n-1
  void mul_letter(int q) {
    if (q < 1 || q >= n_) throw certification_error("spin letter out of range");
    for (int k = n_;; --k) {
      int m = m_[k];
      if (q == m - 1) {
        m_[k] = (uint8_t)q;
        return;
      }
      if (q == m) {
        m_[k] = (uint8_t)(m + 1);
        return;
      }
      if ((k - m) & 1) sign_ = -sign_;
      if (q > m) --q;
    }
  }

  SpinElement operator*(const SpinElement& b) const {
    if (n_ != b.n_) throw certification_error("spin degree mismatch");
    SpinElement r = *this;
    for (int k = 2; k <= n_; ++k)
      for (int j = k - 1; j >= b.m_[k]; --j) r.mul_letter(j);
    r.sign_ *= b.sign_;
    return r;
  }

  SpinElement inverse() const {
    SpinElement inv = lift(to_perm().inverse());
    SpinElement prod = (*this) * inv;  // (id, eps)
    inv.sign_ *= prod.sign_;
    return inv;
  }

  SpinElement pow(long long e) const {
    SpinElement base = *this;
    if (e < 0) {
      base = base.inverse();
      e = -e;
    }
    SpinElement acc = identity(n_);
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  long long order() const {
    long long bound = 2 * to_perm().order();
    SpinElement x = *this;
    for (long long t = 1; t <= bound; ++t) {
      if (x.is_identity()) return t;
      x = x * (*this);
    }
    throw certification_error("spin order exceeded twice the base order");
  }

  bool operator==(const SpinElement& o) const = default;

 private:
  int n_ = 0;
  int sign_ = 1;
  std::vector<uint8_t> m_;  // m_[k], k in [2..n]; m_[k] == k means empty
};

// Order of a lift of p: for even permutations made of 2s disjoint 2-cycles
// both lifts have the same order (4 when s is odd, 2 when s is even).
inline long long order_of_lift(const Perm& p) { return SpinElement::lift(p).order(); }

// For p of odd order d, the unique lift whose order is also d.
inline SpinElement canonical_odd_lift(const Perm& p) {
  long long d = p.order();
  if (d % 2 == 0) throw certification_error("canonical odd lift of even-order element");
  SpinElement x = SpinElement::lift(p);
  if (!x.pow(d).is_identity()) x.negate();
  return x;
}

// Product of the canonical odd lifts of a product-one tuple: +1 or -1.
inline int product_sign(const std::vector<Perm>& tuple) {
  if (tuple.empty()) throw certification_error("product sign of empty tuple");
  int n = tuple[0].degree();
  Perm prod(n);
  for (const auto& g : tuple) prod = prod * g;
  if (!prod.is_identity()) throw certification_error("product sign needs product one");
  SpinElement acc = SpinElement::identity(n);
  for (const auto& g : tuple) acc = acc * canonical_odd_lift(g);
  if (acc.is_identity()) return 1;
  if (acc.is_z()) return -1;
  throw certification_error("lift product is not central");
}

// Closed form for the product sign of an odd, transitive, genus-zero tuple:
// (-1)^{sum of (l^2-1)/8 over all cycle lengths l}.
struct SerreResult {
  bool applicable = false;
  int sign = 0;
};

inline SerreResult serre_formula(const std::vector<Perm>& tuple) {
  SerreResult res;
  if (tuple.empty()) return res;
  int n = tuple[0].degree();
  Perm prod(n);
  long long ind_sum = 0;
  long long omega = 0;
  for (const auto& g : tuple) {
    if (g.order() % 2 == 0) return res;
    prod = prod * g;
    for (const auto& cyc : g.cycles(true)) {
      long long l = (long long)cyc.size();
      ind_sum += l - 1;
      omega += (l * l - 1) / 8;
    }
  }
  if (!prod.is_identity()) return res;
  if (ind_sum != 2 * (n - 1)) return res;
  PermGroup grp(n, tuple);
  if (!grp.is_transitive()) return res;
  res.applicable = true;
  res.sign = (omega % 2 == 0) ? 1 : -1;
  return res;
}

// Exact Clifford-algebra arithmetic over Z[1/sqrt(2)]: value = co / sqrt(2)^k2
// with basis monomials e_S indexed by bitmask S (bit j-1 <-> e_j).  Used as an
// independent oracle for the staircase signs.
class CliffordDense {
 public:
  explicit CliffordDense(int n) : n_(n), k2_(0), co_(size_t(1) << n, 0) {
    if (n < 1 || n > 20) throw budget_error("clifford oracle degree out of range");
    co_[0] = 1;
  }

  static CliffordDense from_word(int n, const std::vector<int>& letters) {
    CliffordDense c(n);
    for (int q : letters) c.mul_letter(q);
    return c;
  }

  // right-multiply by (e_q - e_{q+1})/sqrt(2), 1 <= q <= n-1
  void mul_letter(int q) {
    if (q < 1 || q >= n_) throw certification_error("clifford letter out of range");
    std::vector<long long> out(co_.size(), 0);
    for (size_t S = 0; S < co_.size(); ++S) {
      long long c = co_[S];
      if (!c) continue;
      accumulate(out, S, c, q);
      accumulate(out, S, -c, q + 1);
    }
    co_.swap(out);
    ++k2_;
    normalize();
  }

  void negate() {
    for (auto& c : co_) c = -c;
  }

  // 1 if equal, -1 if negatives, 0 otherwise
  int compare_up_to_sign(const CliffordDense& o) const {
    if (n_ != o.n_ || k2_ != o.k2_) return 0;
    bool eq = true, neg = true;
    for (size_t S = 0; S < co_.size(); ++S) {
      if (co_[S] != o.co_[S]) eq = false;
      if (co_[S] != -o.co_[S]) neg = false;
    }
    if (eq) return 1;
    if (neg) return -1;
    return 0;
  }

  bool operator==(const CliffordDense& o) const = default;

 private:
  static void accumulate(std::vector<long long>& out, size_t S, long long c, int j) {
    int t = std::popcount(S >> j);  // basis factors strictly above e_j
    size_t T = S ^ (size_t(1) << (j - 1));
    out[T] += (t & 1) ? -c : c;
  }

  void normalize() {
    while (k2_ >= 2) {
      for (long long c : co_)
        if (c & 1) return;
      for (auto& c : co_) c /= 2;
      k2_ -= 2;
    }
  }

  int n_;
  long long k2_;
  std::vector<long long> co_;
};

// Canonical staircase word of p, as 1-based generator indices.
inline std::vector<int> staircase_word(const Perm& p) {
  std::vector<int> letters;
  int n = p.degree();
  std::vector<int> img(n);
  for (int x = 0; x < n; ++x) img[x] = p(x) + 1;
  std::vector<int> starts(n + 1, 0);
  for (int k = n; k >= 2; --k) {
    int m = img[k - 1];
    starts[k] = m;
    for (int x = 0; x < k; ++x) {
      int y = img[x];
      if (y == m)
        img[x] = k;
      else if (y > m && y <= k)
        img[x] = y - 1;
    }
  }
  for (int k = 2; k <= n; ++k)
    for (int j = k - 1; j >= starts[k]; --j) letters.push_back(j);
  return letters;
}

}  // namespace bt
