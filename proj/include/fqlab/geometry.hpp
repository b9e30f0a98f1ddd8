#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fqlab/common.hpp"
#include "fqlab/error.hpp"
#include "fqlab/field.hpp"

namespace fqlab {

// Points of F_q^d are addressed by an index in [0, q^d): coordinate 0 is the
// least significant base-q digit. PointSet files depend on this encoding, so
// it is fixed.

inline uint64_t space_size(const Field& f, uint32_t d) {
  uint64_t n = 1;
  for (uint32_t i = 0; i < d; ++i) {
    n *= f.q();
    if (n > kMaxSpherePoints)
      fail(ErrorCode::BudgetExceeded, "q^d exceeds the index-space budget");
  }
  return n;
}

inline void decode_point(const Field& f, uint32_t d, uint64_t idx,
                         std::span<Elem> out) {
  for (uint32_t i = 0; i < d; ++i) {
    out[i] = static_cast<Elem>(idx % f.q());
    idx /= f.q();
  }
}

inline uint64_t encode_point(const Field& f, std::span<const Elem> coords) {
  uint64_t idx = 0;
  for (size_t i = coords.size(); i-- > 0;) idx = idx * f.q() + coords[i];
  return idx;
}

// ||v|| = v_1^2 + ... + v_d^2 in F_q. Not a metric; invariant under
// coordinate permutations and sign flips.
inline Elem norm(const Field& f, std::span<const Elem> coords) {
  Elem acc = 0;
  for (Elem c : coords) acc = f.add(acc, f.square(c));
  return acc;
}

inline Elem norm_of_index(const Field& f, uint32_t d, uint64_t idx) {
  Elem acc = 0;
  for (uint32_t i = 0; i < d; ++i) {
    acc = f.add(acc, f.square(static_cast<Elem>(idx % f.q())));
    idx /= f.q();
  }
  return acc;
}

// Norm of every point index, in index order.
inline std::vector<Elem> norm_table(const Field& f, uint32_t d) {
  const uint64_t n = space_size(f, d);
  std::vector<Elem> norms(n);
  // Extend digit by digit: norms over F_q^(j+1) from norms over F_q^j.
  norms[0] = 0;
  uint64_t filled = 1;
  for (uint32_t j = 0; j < d; ++j) {
    for (Elem c = 1; c < f.q(); ++c) {
      const Elem sq = f.square(c);
      for (uint64_t i = 0; i < filled; ++i)
        norms[c * filled + i] = f.add(norms[i], sq);
    }
    filled *= f.q();
  }
  return norms;
}

// Spheres S_t = {x : ||x|| = t}, one member list per t in F_q. The lists
// partition the index space.
struct SphereTable {
  uint32_t q = 0;
  uint32_t d = 0;
  std::vector<std::vector<uint32_t>> members;  // indexed by t

  uint64_t cardinality(Elem t) const { return members[t].size(); }
};

inline SphereTable build_spheres(const Field& f, uint32_t d) {
  const uint64_t n = space_size(f, d);
  SphereTable table;
  table.q = f.q();
  table.d = d;
  table.members.resize(f.q());
  const std::vector<Elem> norms = norm_table(f, d);
  for (uint64_t i = 0; i < n; ++i)
    table.members[norms[i]].push_back(static_cast<uint32_t>(i));
  return table;
}

// |S_t| <= 2 q^(d-1) for every t.
inline bool sphere_card_bound_check(const SphereTable& table) {
  const uint64_t cap = 2 * ipow(table.q, table.d - 1);
  for (const auto& list : table.members)
    if (list.size() > cap) return false;
  return true;
}

}  // namespace fqlab
