#pragma once
// Permutations with right action, cycle parsing/printing, closure enumeration,
// Schreier-Sims order computation, conjugacy classes and centralizers.
#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace bt {

// exit-code taxonomy: certification failures -> 1, budget aborts -> 2
struct certification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline long long llcm(long long a, long long b) { return a / std::gcd(a, b) * b; }

class Perm {
 public:
  Perm() = default;
  explicit Perm(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }
  static Perm from_images(std::vector<uint16_t> img) {
    Perm p;
    p.img_ = std::move(img);
    return p;
  }

  int degree() const { return (int)img_.size(); }
  uint16_t operator()(uint16_t x) const { return img_[x]; }  // (x)p, 0-based
  const std::vector<uint16_t>& images() const { return img_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // right action: (x)(a*b) = ((x)a)b
  friend Perm operator*(const Perm& a, const Perm& b) {
    Perm r;
    r.img_.resize(a.img_.size());
    for (size_t x = 0; x < a.img_.size(); ++x) r.img_[x] = b.img_[a.img_[x]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (size_t x = 0; x < img_.size(); ++x) r.img_[img_[x]] = (uint16_t)x;
    return r;
  }

  Perm pow(long long k) const {
    long long o = order();
    k %= o;
    if (k < 0) k += o;
    Perm r((int)img_.size()), base = *this;
    while (k) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  std::vector<std::vector<uint16_t>> cycles(bool with_fixed = false) const {
    std::vector<std::vector<uint16_t>> out;
    std::vector<char> seen(img_.size(), 0);
    for (uint16_t x = 0; x < img_.size(); ++x) {
      if (seen[x]) continue;
      std::vector<uint16_t> c;
      uint16_t y = x;
      do {
        seen[y] = 1;
        c.push_back(y);
        y = img_[y];
      } while (y != x);
      if (c.size() > 1 || with_fixed) out.push_back(std::move(c));
    }
    return out;
  }

  long long order() const {
    long long o = 1;
    for (auto& c : cycles()) o = llcm(o, (long long)c.size());
    return o;
  }

  bool is_even() const {
    int t = 0;
    for (auto& c : cycles()) t += (int)c.size() - 1;
    return t % 2 == 0;
  }

  int n_fixed() const {
    int f = 0;
    for (int i = 0; i < degree(); ++i)
      if (img_[i] == i) ++f;
    return f;
  }

  auto operator<=>(const Perm&) const = default;

  // "(1 2 3)(4 5)": disjoint cycles sorted by least moved point, 1-based,
  // fixed points omitted, identity prints as "()"
  std::string to_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (auto& c : cs) {
      s += '(';
      for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(c[i] + 1);
      }
      s += ')';
    }
    return s;
  }

  static Perm parse(const std::string& s, int n) {
    Perm p(n);
    std::vector<char> used(n, 0);
    size_t i = 0;
    auto skip_ws = [&] {
      while (i < s.size() && (s[i] == ' ' || s[i] == ',' || s[i] == '\t')) ++i;
    };
    skip_ws();
    bool any = false;
    while (i < s.size()) {
      if (s[i] != '(')
        throw std::invalid_argument("perm parse: expected '(' at position " +
                                    std::to_string(i) + " in \"" + s + "\"");
      ++i;
      std::vector<int> cyc;
      skip_ws();
      while (i < s.size() && s[i] != ')') {
        if (!isdigit((unsigned char)s[i]))
          throw std::invalid_argument("perm parse: expected integer at position " +
                                      std::to_string(i) + " in \"" + s + "\"");
        int v = 0;
        size_t start = i;
        while (i < s.size() && isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
        if (v < 1 || v > n)
          throw std::invalid_argument("perm parse: point " + std::to_string(v) +
                                      " out of range 1.." + std::to_string(n) +
                                      " at position " + std::to_string(start));
        if (used[v - 1])
          throw std::invalid_argument("perm parse: repeated point " + std::to_string(v));
        used[v - 1] = 1;
        cyc.push_back(v - 1);
        skip_ws();
      }
      if (i >= s.size())
        throw std::invalid_argument("perm parse: unterminated cycle in \"" + s + "\"");
      ++i;  // ')'
      for (size_t k = 0; k < cyc.size(); ++k)
        p.img_[cyc[k]] = (uint16_t)cyc[(k + 1) % cyc.size()];
      any = true;
      skip_ws();
    }
    if (!any)
      throw std::invalid_argument("perm parse: empty input");
    return p;
  }

 private:
  std::vector<uint16_t> img_;
};

inline Perm conjugate(const Perm& a, const Perm& b) {  // b^-1 * a * b
  std::vector<uint16_t> img(a.degree());
  for (int x = 0; x < a.degree(); ++x) img[b((uint16_t)x)] = b(a((uint16_t)x));
  return Perm::from_images(std::move(img));
}

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 1469598103934665603ull;
    for (uint16_t v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// ---- Schreier-Sims ------------------------------------------------------

class BSGS {
 public:
  explicit BSGS(int degree, const std::vector<Perm>& gens) : n_(degree) {
    for (auto& g : gens)
      if (!g.is_identity()) strong_.push_back(g);
    rebuild();
    // close Schreier generators until stable
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = 0; i < base_.size() && !dirty; ++i) {
        auto Si = level_gens(i);
        for (uint16_t x : orbit_[i]) {
          for (auto& s : Si) {
            Perm u = trans_[i][x] * s * trans_[i][s(x)].inverse();
            Perm res = sift(u);
            if (!res.is_identity()) {
              strong_.push_back(res);
              rebuild();
              dirty = true;
              break;
            }
          }
          if (dirty) break;
        }
      }
    }
  }

  unsigned long long order() const {
    unsigned long long o = 1;
    for (auto& ob : orbit_) {
      unsigned long long next = o * ob.size();
      if (!ob.empty() && next / ob.size() != o) throw budget_error("group order exceeds 64 bits");
      o = next;
    }
    return o;
  }

  // product of the stabilizer-chain orbit sizes mod m; exact for any order
  unsigned long long order_mod(unsigned long long m) const {
    unsigned long long o = 1 % m;
    for (auto& ob : orbit_) o = (unsigned long long)((unsigned __int128)o * ob.size() % m);
    return o;
  }

  bool contains(const Perm& p) const { return sift(p).is_identity(); }

 private:
  void rebuild() {
    base_.clear();
    orbit_.clear();
    trans_.clear();
    // iterative: add base points until every strong gen is sifted by base
    while (true) {
      size_t i = base_.size();
      auto Si = level_gens(i);
      if (Si.empty()) break;
      int b = -1;
      for (int x = 0; x < n_ && b < 0; ++x)
        for (auto& g : Si)
          if (g((uint16_t)x) != x) {
            b = x;
            break;
          }
      if (b < 0) break;
      base_.push_back(b);
      // BFS orbit of b under Si
      std::vector<Perm> tr(n_);
      std::vector<char> in(n_, 0);
      std::vector<uint16_t> orb{(uint16_t)b};
      in[b] = 1;
      tr[b] = Perm(n_);
      for (size_t q = 0; q < orb.size(); ++q) {
        for (auto& g : Si) {
          uint16_t y = g(orb[q]);
          if (!in[y]) {
            in[y] = 1;
            tr[y] = tr[orb[q]] * g;
            orb.push_back(y);
          }
        }
      }
      orbit_.push_back(std::move(orb));
      trans_.push_back(std::move(tr));
    }
  }

  std::vector<Perm> level_gens(size_t i) const {
    std::vector<Perm> out;
    for (auto& g : strong_) {
      bool ok = true;
      for (size_t k = 0; k < i && k < base_.size(); ++k)
        if (g((uint16_t)base_[k]) != base_[k]) {
          ok = false;
          break;
        }
      if (ok) out.push_back(g);
    }
    return out;
  }

  Perm sift(Perm g) const {
    for (size_t i = 0; i < base_.size(); ++i) {
      uint16_t x = g((uint16_t)base_[i]);
      if (trans_[i][x].degree() == 0) return g;  // not in orbit
      g = g * trans_[i][x].inverse();
    }
    return g;
  }

  int n_;
  std::vector<Perm> strong_;
  std::vector<int> base_;
  std::vector<std::vector<uint16_t>> orbit_;
  std::vector<std::vector<Perm>> trans_;
};

// ---- permutation groups --------------------------------------------------

class PermGroup {
 public:
  PermGroup(int degree, std::vector<Perm> gens) : n_(degree) {
    for (auto& g : gens) {
      if (g.degree() != degree)
        throw std::invalid_argument("generator degree mismatch");
      if (!g.is_identity()) gens_.push_back(g);
    }
  }

  int degree() const { return n_; }
  const std::vector<Perm>& gens() const { return gens_; }

  // sorted full enumeration (BFS closure); throws budget_error past cap
  std::vector<Perm> enumerate(size_t cap = 10'000'000) const {
    std::vector<Perm> elems{Perm(n_)};
    std::unordered_map<Perm, int, PermHash> seen;
    seen.emplace(elems[0], 0);
    for (size_t q = 0; q < elems.size(); ++q) {
      for (auto& g : gens_) {
        Perm h = elems[q] * g;
        if (seen.emplace(h, (int)elems.size()).second) {
          elems.push_back(std::move(h));
          if (elems.size() > cap)
            throw budget_error("group enumeration exceeded cap " + std::to_string(cap));
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  unsigned long long order(size_t cap = 10'000'000) const {
    if (n_ > 12) return BSGS(n_, gens_).order();
    return enumerate(cap).size();
  }

  unsigned long long order_bsgs() const { return BSGS(n_, gens_).order(); }

  bool is_transitive() const {
    std::vector<char> in(n_, 0);
    std::vector<uint16_t> orb{0};
    in[0] = 1;
    for (size_t q = 0; q < orb.size(); ++q)
      for (auto& g : gens_) {
        uint16_t y = g(orb[q]);
        if (!in[y]) {
          in[y] = 1;
          orb.push_back(y);
        }
      }
    return orb.size() == (size_t)n_;
  }

  bool all_even() const {
    for (auto& g : gens_)
      if (!g.is_even()) return false;
    return true;
  }

  BSGS bsgs() const { return BSGS(n_, gens_); }

 private:
  int n_;
  std::vector<Perm> gens_;
};

// conjugacy classes over a fully enumerated (sorted) group: returns classes as
// index lists, ordered by least member index; class members sorted
inline std::vector<std::vector<int>> conj_classes(const std::vector<Perm>& elems) {
  std::unordered_map<Perm, int, PermHash> idx;
  for (int i = 0; i < (int)elems.size(); ++i) idx.emplace(elems[i], i);
  std::vector<char> seen(elems.size(), 0);
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < (int)elems.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cls;
    for (auto& g : elems) {
      int j = idx.at(conjugate(elems[i], g));
      if (!seen[j]) {
        seen[j] = 1;
        cls.push_back(j);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

inline std::vector<int> centralizer(const std::vector<Perm>& elems, const Perm& p) {
  std::vector<int> out;
  for (int i = 0; i < (int)elems.size(); ++i)
    if (elems[i] * p == p * elems[i]) out.push_back(i);
  return out;
}

// all n! permutations of degree n in lexicographic image order (n <= 8)
inline std::vector<Perm> sym_enumerate(int n) {
  if (n > 8) throw budget_error("sym_enumerate limited to degree 8");
  std::vector<uint16_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Perm> out;
  do out.push_back(Perm::from_images(img));
  while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace bt
