#pragma once
// GF(2) bit vectors and streaming Gaussian elimination (lowest-set-bit pivots,
// fully deterministic).
#include <cstdint>
#include <vector>

#include "braidtower/perm.hpp"

namespace bt {

struct BitVec {
  int nbits = 0;
  std::vector<uint64_t> w;

  BitVec() = default;
  explicit BitVec(int n) : nbits(n), w((n + 63) / 64, 0) {}

  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w[i >> 6] |= 1ull << (i & 63); }
  void flip(int i) { w[i >> 6] ^= 1ull << (i & 63); }

  void operator^=(const BitVec& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
  }

  bool zero() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }

  int lowest_set() const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i]) return (int)(i * 64 + std::countr_zero(w[i]));
    return -1;
  }

  bool operator==(const BitVec&) const = default;
};

class GF2Elim {
 public:
  explicit GF2Elim(int width) : width_(width), row_with_pivot_(width, -1) {}

  // returns true if the row was independent (rank grew)
  bool add(BitVec v) {
    reduce(v);
    int p = v.lowest_set();
    if (p < 0) return false;
    row_with_pivot_[p] = (int)rows_.size();
    pivots_.push_back(p);
    rows_.push_back(std::move(v));
    return true;
  }

  bool in_span(BitVec v) const {
    reduce(v);
    return v.zero();
  }

  int rank() const { return (int)rows_.size(); }
  int width() const { return width_; }

  // reduced row echelon form: also clear pivot columns from all other rows
  void rref() {
    for (size_t r = 0; r < rows_.size(); ++r) {
      int p = pivots_[r];
      for (size_t s = 0; s < rows_.size(); ++s)
        if (s != r && rows_[s].get(p)) rows_[s] ^= rows_[r];
    }
  }

  // basis of the solution space {x : Rx = 0} treating stored rows as the
  // constraint matrix; call rref() first
  std::vector<BitVec> nullspace_basis() const {
    std::vector<char> is_pivot(width_, 0);
    for (int p : pivots_) is_pivot[p] = 1;
    std::vector<BitVec> basis;
    for (int f = 0; f < width_; ++f) {
      if (is_pivot[f]) continue;
      BitVec x(width_);
      x.set(f);
      for (size_t r = 0; r < rows_.size(); ++r)
        if (rows_[r].get(f)) x.flip(pivots_[r]);
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  void reduce(BitVec& v) const {
    while (true) {
      int p = v.lowest_set();
      if (p < 0) return;
      int r = row_with_pivot_[p];
      if (r < 0) return;
      v ^= rows_[r];
    }
  }

  int width_;
  std::vector<BitVec> rows_;
  std::vector<int> pivots_;
  std::vector<int> row_with_pivot_;
};

}  // namespace bt
