#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "fqlab/error.hpp"
#include "fqlab/field.hpp"
#include "fqlab/geometry.hpp"

namespace fqlab {

// A subset of F_q^d as a membership bitset over point indices.
class PointSet {
 public:
  PointSet(uint32_t q, uint32_t d, uint64_t universe)
      : q_(q), d_(d), universe_(universe), bits_((universe + 63) / 64, 0) {}

  PointSet(const Field& f, uint32_t d) : PointSet(f.q(), d, space_size(f, d)) {}

  static PointSet full(const Field& f, uint32_t d) {
    PointSet s(f, d);
    for (uint64_t i = 0; i < s.universe_; ++i) s.insert(i);
    return s;
  }

  uint32_t q() const { return q_; }
  uint32_t d() const { return d_; }
  uint64_t universe_size() const { return universe_; }
  uint64_t cardinality() const { return card_; }

  bool contains(uint64_t idx) const {
    return (bits_[idx >> 6] >> (idx & 63)) & 1;
  }

  void insert(uint64_t idx) {
    if (idx >= universe_) fail(ErrorCode::OutOfRange, "point index out of range");
    uint64_t& w = bits_[idx >> 6];
    const uint64_t m = 1ull << (idx & 63);
    if (!(w & m)) {
      w |= m;
      ++card_;
    }
  }

  void erase(uint64_t idx) {
    uint64_t& w = bits_[idx >> 6];
    const uint64_t m = 1ull << (idx & 63);
    if (w & m) {
      w &= ~m;
      --card_;
    }
  }

  // Member indices in ascending order.
  std::vector<uint32_t> members() const {
    std::vector<uint32_t> out;
    out.reserve(card_);
    for (size_t w = 0; w < bits_.size(); ++w) {
      uint64_t bitsw = bits_[w];
      while (bitsw) {
        const int b = std::countr_zero(bitsw);
        out.push_back(static_cast<uint32_t>(w * 64 + b));
        bitsw &= bitsw - 1;
      }
    }
    return out;
  }

  bool same_space(const PointSet& o) const {
    return q_ == o.q_ && d_ == o.d_ && universe_ == o.universe_;
  }

  bool operator==(const PointSet& o) const {
    return same_space(o) && bits_ == o.bits_;
  }

 private:
  uint32_t q_, d_;
  uint64_t universe_;
  std::vector<uint64_t> bits_;
  uint64_t card_ = 0;
};

inline void require_same_space(const Field& f, const PointSet& a,
                               const PointSet& b) {
  if (!a.same_space(b) || a.q() != f.q())
    fail(ErrorCode::DimensionMismatch, "point sets live in different spaces");
}

}  // namespace fqlab
