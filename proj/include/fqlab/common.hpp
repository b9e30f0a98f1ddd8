#pragma once

#include <cstdint>

namespace fqlab {

// Library-wide absolute tolerance for character-sum identities and
// inequality slack. Double precision carries ~15 digits and every checked
// quantity stays below ~10^8 at the supported sizes, so 1e-6 absolute is
// comfortably above roundoff and far below any true violation.
inline constexpr double kDefaultTol = 1e-6;

// A theorem bound counts as met when measured >= bound - kBoundPassMargin.
inline constexpr double kBoundPassMargin = 1e-9;

// Index-space cap for point sets and sphere enumeration.
inline constexpr uint64_t kMaxSpherePoints = 1ull << 24;

// Index-space cap for full transforms (direct DFT work is O(d * q^(d+1))).
inline constexpr uint64_t kMaxDftPoints = 1'000'000;

// Pair budget for brute-force distance counting.
inline constexpr uint64_t kMaxPairs = 100'000'000;

inline uint64_t ipow(uint64_t base, uint32_t exp) {
  uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace fqlab
