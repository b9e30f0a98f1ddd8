#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "fqlab/distance.hpp"
#include "fqlab/error.hpp"
#include "fqlab/field.hpp"
#include "fqlab/pointset.hpp"

namespace fqlab {

// SplitMix64. The exact update, so any implementation reproduces the same
// streams byte for byte:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, n): reject draws below 2^64 mod n, then reduce.
  uint64_t bounded(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;  // == 2^64 mod n
    uint64_t x;
    do {
      x = next();
    } while (x < threshold);
    return x % n;
  }

 private:
  uint64_t state_;
};

// Deterministic per-instance seed derivation for sweeps.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b,
                            uint64_t c) {
  SplitMix64 rng(base ^ (a * 0x9E3779B97F4A7C15ull) ^
                 (b * 0xC2B2AE3D27D4EB4Full) ^ (c * 0x165667B19E3779F9ull));
  return rng.next();
}

// Uniform n-subset of the index range by a partial Fisher-Yates shuffle.
inline PointSet random_set(const Field& f, uint32_t d, uint64_t n,
                           uint64_t seed) {
  PointSet s(f, d);
  const uint64_t total = s.universe_size();
  if (n > total) fail(ErrorCode::OutOfRange, "n > q^d");
  std::vector<uint32_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0u);
  SplitMix64 rng(seed);
  for (uint64_t i = 0; i < n; ++i) {
    const uint64_t j = i + rng.bounded(total - i);
    std::swap(idx[i], idx[j]);
    s.insert(idx[i]);
  }
  return s;
}

// E = A x ... x A (d factors).
inline PointSet product_set(const Field& f, uint32_t d,
                            const std::vector<Elem>& a) {
  if (a.empty()) fail(ErrorCode::EmptyFactor, "factor set A is empty");
  std::vector<Elem> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Elem c : sorted)
    if (c >= f.q()) fail(ErrorCode::OutOfRange, "factor element >= q");
  PointSet s(f, d);
  std::vector<size_t> odometer(d, 0);
  while (true) {
    uint64_t index = 0;
    for (uint32_t i = d; i-- > 0;) index = index * f.q() + sorted[odometer[i]];
    s.insert(index);
    uint32_t pos = 0;
    while (pos < d && ++odometer[pos] == sorted.size()) odometer[pos++] = 0;
    if (pos == d) break;
  }
  return s;
}

// For even d and i^2 = -1 (smallest such index), the set
//   { (t_1, i t_1, ..., t_{d/2}, i t_{d/2}) : t_j in F_q },
// of size q^(d/2) with Delta(E, E) = {0}: the norm vanishes on all
// differences, so the size threshold for even dimensions is sharp.
inline PointSet isotropic_set(const Field& f, uint32_t d) {
  if (d % 2 != 0) fail(ErrorCode::OddDimension, "requires even d");
  const Elem minus_one = f.neg(1);
  Elem i = 0;
  for (Elem c = 1; c < f.q(); ++c)
    if (f.square(c) == minus_one) {
      i = c;
      break;
    }
  if (i == 0)
    fail(ErrorCode::MinusOneNotSquare,
         "-1 has no square root in F_" + std::to_string(f.q()));
  PointSet s(f, d);
  const uint32_t half = d / 2;
  std::vector<Elem> coords(d);
  std::vector<Elem> ts(half, 0);
  while (true) {
    for (uint32_t j = 0; j < half; ++j) {
      coords[2 * j] = ts[j];
      coords[2 * j + 1] = f.mul(i, ts[j]);
    }
    s.insert(encode_point(f, coords));
    uint32_t pos = 0;
    while (pos < half && ++ts[pos] == f.q()) ts[pos++] = 0;
    if (pos == half) break;
  }
  return s;
}

struct SearchResult {
  PointSet best;
  uint64_t delta = 0;
  // delta of the current best after each iteration; entry 0 is the start.
  std::vector<uint64_t> trajectory;
};

// Hill climb on |Delta(E, E)| by single-point swaps, accepting only strict
// decreases. Deterministic per seed.
inline SearchResult minimize_distance_search(const Field& f, uint32_t d,
                                             uint64_t n, uint64_t iters,
                                             uint64_t seed) {
  if (n < 1) fail(ErrorCode::OutOfRange, "n must be >= 1");
  PointSet start = random_set(f, d, n, seed);
  SearchResult res{std::move(start), 0, {}};
  res.delta = distance_set(f, res.best, res.best).size();
  res.trajectory.reserve(iters + 1);
  res.trajectory.push_back(res.delta);
  SplitMix64 rng(seed ^ 0xD1B54A32D192ED03ull);
  const uint64_t total = res.best.universe_size();
  for (uint64_t it = 0; it < iters; ++it) {
    if (n < total && res.delta > 1) {
      const auto members = res.best.members();
      const uint32_t out = members[rng.bounded(n)];
      uint64_t in;
      do {
        in = rng.bounded(total);
      } while (res.best.contains(in));
      PointSet cand = res.best;
      cand.erase(out);
      cand.insert(in);
      const uint64_t cand_delta = distance_set(f, cand, cand).size();
      if (cand_delta < res.delta) {
        res.best = std::move(cand);
        res.delta = cand_delta;
      }
    }
    res.trajectory.push_back(res.delta);
  }
  return res;
}

}  // namespace fqlab
