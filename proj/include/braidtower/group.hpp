#pragma once
// Dense finite-group arithmetic: full multiplication tables indexed by uint16,
// conjugacy classes, centralizers, subgroup closures, quotients.
#include <functional>
#include <unordered_map>

#include "braidtower/perm.hpp"

namespace bt {

class ConcreteGroup {
 public:
  static ConcreteGroup from_mul(uint32_t n,
                                const std::function<uint16_t(uint16_t, uint16_t)>& f) {
    ConcreteGroup G;
    G.n_ = n;
    G.mul_.resize((size_t)n * n);
    for (uint32_t a = 0; a < n; ++a)
      for (uint32_t b = 0; b < n; ++b) G.mul_[(size_t)a * n + b] = f((uint16_t)a, (uint16_t)b);
    G.finish();
    return G;
  }

  // from a closed, sorted element list; element index = rank in sorted order
  static ConcreteGroup from_perms(const std::vector<Perm>& elems) {
    std::unordered_map<Perm, uint16_t, PermHash> idx;
    for (uint16_t i = 0; i < elems.size(); ++i) idx.emplace(elems[i], i);
    ConcreteGroup G;
    G.n_ = (uint32_t)elems.size();
    G.mul_.resize((size_t)G.n_ * G.n_);
    for (uint32_t a = 0; a < G.n_; ++a)
      for (uint32_t b = 0; b < G.n_; ++b) {
        auto it = idx.find(elems[a] * elems[b]);
        if (it == idx.end()) throw certification_error("element list not closed under product");
        G.mul_[(size_t)a * G.n_ + b] = it->second;
      }
    G.finish();
    return G;
  }

  uint32_t order() const { return n_; }
  uint16_t mul(uint16_t a, uint16_t b) const { return mul_[(size_t)a * n_ + b]; }
  uint16_t inv(uint16_t a) const { return inv_[a]; }
  uint16_t id() const { return id_; }
  int elt_order(uint16_t a) const { return order_of_[a]; }
  uint16_t conj(uint16_t a, uint16_t g) const { return mul(mul(inv_[g], a), g); }  // g^-1 a g

  uint16_t power(uint16_t a, long long k) const {
    long long o = order_of_[a];
    k %= o;
    if (k < 0) k += o;
    uint16_t r = id_;
    while (k--) r = mul(r, a);
    return r;
  }

  const std::vector<std::vector<uint16_t>>& classes() const { return classes_; }
  int class_of(uint16_t a) const { return class_of_[a]; }
  uint16_t class_rep(int c) const { return classes_[c][0]; }

  std::vector<uint16_t> centralizer(uint16_t a) const {
    std::vector<uint16_t> out;
    for (uint32_t g = 0; g < n_; ++g)
      if (mul((uint16_t)g, a) == mul(a, (uint16_t)g)) out.push_back((uint16_t)g);
    return out;
  }

  std::vector<uint16_t> center() const {
    std::vector<uint16_t> out;
    for (uint32_t z = 0; z < n_; ++z) {
      bool ok = true;
      for (uint32_t g = 0; g < n_ && ok; ++g) ok = mul((uint16_t)z, (uint16_t)g) == mul((uint16_t)g, (uint16_t)z);
      if (ok) out.push_back((uint16_t)z);
    }
    return out;
  }

  // sorted closure; early_exit: stop (returning partial, size > early_exit) once
  // the closure grows past that bound
  std::vector<uint16_t> closure(std::vector<uint16_t> seed, size_t early_exit = SIZE_MAX) const {
    std::vector<char> in(n_, 0);
    std::vector<uint16_t> q{id_};
    in[id_] = 1;
    for (auto s : seed)
      if (!in[s]) {
        in[s] = 1;
        q.push_back(s);
      }
    for (size_t i = 0; i < q.size(); ++i) {
      for (auto s : seed) {
        uint16_t t = mul(q[i], s);
        if (!in[t]) {
          in[t] = 1;
          q.push_back(t);
          if (q.size() > early_exit) return q;
        }
      }
    }
    std::sort(q.begin(), q.end());
    return q;
  }

  bool generates(const std::vector<uint16_t>& seed) const {
    return closure(seed, n_ - 1).size() >= n_;
  }

  bool is_perfect() const {
    std::vector<uint16_t> comms;
    std::vector<char> seen(n_, 0);
    for (uint32_t a = 0; a < n_; ++a)
      for (uint32_t b = 0; b < n_; ++b) {
        uint16_t c = mul(mul(mul(inv_[(uint16_t)a], inv_[(uint16_t)b]), (uint16_t)a), (uint16_t)b);
        if (!seen[c]) {
          seen[c] = 1;
          comms.push_back(c);
        }
      }
    return closure(comms).size() == n_;
  }

  // subgroup on a sorted element subset; returns the subgroup with maps
  struct Subgroup;
  Subgroup subgroup(const std::vector<uint16_t>& elems_sorted) const;

  // quotient by a normal subgroup (sorted element list); returns quotient and
  // the projection map
  struct Quotient;
  Quotient quotient(const std::vector<uint16_t>& normal_sorted) const;

  // right cosets H\G with deterministic labels: identity's coset first, then
  // first-unseen in element index order; returns coset-of map and rep list
  struct CosetTable {
    std::vector<uint16_t> coset_of;  // element -> coset label
    std::vector<uint16_t> reps;      // label -> representative
  };
  CosetTable right_cosets(const std::vector<uint16_t>& subgroup_sorted) const {
    CosetTable T;
    T.coset_of.assign(n_, UINT16_MAX);
    for (uint32_t x = 0; x < n_; ++x) {
      if (T.coset_of[x] != UINT16_MAX) continue;
      uint16_t label = (uint16_t)T.reps.size();
      T.reps.push_back((uint16_t)x);
      for (auto h : subgroup_sorted) T.coset_of[mul(h, (uint16_t)x)] = label;
    }
    return T;
  }

  // action on right cosets: (Hu)g = H(ug)
  Perm coset_perm(const CosetTable& T, uint16_t g) const {
    std::vector<uint16_t> img(T.reps.size());
    for (uint16_t i = 0; i < T.reps.size(); ++i) img[i] = T.coset_of[mul(T.reps[i], g)];
    return Perm::from_images(std::move(img));
  }

 private:
  void finish() {
    // locate identity
    int idn = -1;
    for (uint32_t e = 0; e < n_; ++e) {
      bool ok = true;
      for (uint32_t a = 0; a < n_ && ok; ++a)
        ok = mul((uint16_t)e, (uint16_t)a) == a && mul((uint16_t)a, (uint16_t)e) == a;
      if (ok) {
        idn = (int)e;
        break;
      }
    }
    if (idn < 0) throw certification_error("multiplication table has no identity");
    id_ = (uint16_t)idn;
    inv_.assign(n_, 0);
    for (uint32_t a = 0; a < n_; ++a) {
      int found = -1;
      for (uint32_t b = 0; b < n_; ++b)
        if (mul((uint16_t)a, (uint16_t)b) == id_) {
          found = (int)b;
          break;
        }
      if (found < 0 || mul((uint16_t)found, (uint16_t)a) != id_)
        throw certification_error("multiplication table has no two-sided inverse");
      inv_[a] = (uint16_t)found;
    }
    order_of_.assign(n_, 0);
    for (uint32_t a = 0; a < n_; ++a) {
      int o = 1;
      uint16_t x = (uint16_t)a;
      while (x != id_) {
        x = mul(x, (uint16_t)a);
        ++o;
      }
      order_of_[a] = o;
    }
    // conjugacy classes, ordered by least member
    class_of_.assign(n_, -1);
    for (uint32_t a = 0; a < n_; ++a) {
      if (class_of_[a] >= 0) continue;
      int cid = (int)classes_.size();
      std::vector<uint16_t> cls;
      for (uint32_t g = 0; g < n_; ++g) {
        uint16_t c = conj((uint16_t)a, (uint16_t)g);
        if (class_of_[c] < 0) {
          class_of_[c] = cid;
          cls.push_back(c);
        }
      }
      std::sort(cls.begin(), cls.end());
      classes_.push_back(std::move(cls));
    }
  }

  uint32_t n_ = 0;
  uint16_t id_ = 0;
  std::vector<uint16_t> mul_, inv_;
  std::vector<int> order_of_, class_of_;
  std::vector<std::vector<uint16_t>> classes_;
};

struct ConcreteGroup::Subgroup {
  ConcreteGroup grp;
  std::vector<uint16_t> to_parent;  // sub index -> parent index
  std::unordered_map<uint16_t, uint16_t> from_parent;
};

inline ConcreteGroup::Subgroup ConcreteGroup::subgroup(
    const std::vector<uint16_t>& elems_sorted) const {
  Subgroup S;
  S.to_parent = elems_sorted;
  for (uint16_t i = 0; i < elems_sorted.size(); ++i) S.from_parent[elems_sorted[i]] = i;
  S.grp = from_mul((uint32_t)elems_sorted.size(), [&](uint16_t a, uint16_t b) {
    auto it = S.from_parent.find(mul(S.to_parent[a], S.to_parent[b]));
    if (it == S.from_parent.end()) throw certification_error("subset not closed under product");
    return it->second;
  });
  return S;
}

struct ConcreteGroup::Quotient {
  ConcreteGroup grp;
  std::vector<uint16_t> proj;  // parent index -> quotient index
};

inline ConcreteGroup::Quotient ConcreteGroup::quotient(
    const std::vector<uint16_t>& normal_sorted) const {
  std::vector<int> coset(n_, -1);
  std::vector<uint16_t> reps;
  for (uint32_t x = 0; x < n_; ++x) {
    if (coset[x] >= 0) continue;
    uint16_t label = (uint16_t)reps.size();
    reps.push_back((uint16_t)x);
    for (auto h : normal_sorted) coset[mul(h, (uint16_t)x)] = label;
  }
  Quotient Q;
  Q.proj.assign(n_, 0);
  for (uint32_t x = 0; x < n_; ++x) Q.proj[x] = (uint16_t)coset[x];
  Q.grp = from_mul((uint32_t)reps.size(), [&](uint16_t a, uint16_t b) {
    return (uint16_t)coset[mul(reps[a], reps[b])];
  });
  for (uint32_t a = 0; a < n_; ++a)
    for (auto h : normal_sorted)
      if (coset[mul((uint16_t)a, h)] != coset[a])
        throw certification_error("quotient by non-normal or non-subgroup set");
  return Q;
}

}  // namespace bt
